#include "qcurl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcurl {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::runtime_error("matmul: shape mismatch");
    Matrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const cd v = x(i, k);
            if (v == cd(0.0, 0.0)) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    }
    return r;
}

Matrix adjoint(const Matrix& m) {
    Matrix r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            const cd v = x(i, j);
            if (v == cd(0.0, 0.0)) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    r(i * y.rows + k, j * y.cols + l) = v * y(k, l);
        }
    return r;
}

cd trace(const Matrix& m) {
    if (m.rows != m.cols) throw std::runtime_error("trace: not square");
    cd t = 0.0;
    for (int i = 0; i < m.rows; ++i) t += m(i, i);
    return t;
}

double max_abs_diff(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::runtime_error("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
    return d;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows != m.cols) return false;
    Matrix p = matmul(adjoint(m), m);
    return max_abs_diff(p, Matrix::identity(m.rows)) <= tol;
}

Matrix matrix_exp(const Matrix& m) {
    if (m.rows != m.cols) throw std::runtime_error("matrix_exp: not square");
    double norm = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.cols; ++j) row += std::abs(m(i, j));
        norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++s;
    }
    Matrix x = m;
    const double scale = std::ldexp(1.0, -s);
    for (auto& v : x.a) v *= scale;

    Matrix result = Matrix::identity(m.rows);
    Matrix term = Matrix::identity(m.rows);
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, x);
        for (auto& v : term.a) v *= 1.0 / k;
        for (size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
    }
    for (int k = 0; k < s; ++k) result = matmul(result, result);
    return result;
}

std::vector<double> solve_spd(std::vector<double> A, std::vector<double> b, int n) {
    if (static_cast<int>(A.size()) != n * n || static_cast<int>(b.size()) != n)
        throw std::runtime_error("solve_spd: shape mismatch");
    // In-place Cholesky A = L L^T (lower triangle).
    for (int j = 0; j < n; ++j) {
        double d = A[j * n + j];
        for (int k = 0; k < j; ++k) d -= A[j * n + k] * A[j * n + k];
        if (d <= 0.0) throw std::runtime_error("solve_spd: matrix not positive definite");
        const double l = std::sqrt(d);
        A[j * n + j] = l;
        for (int i = j + 1; i < n; ++i) {
            double s = A[i * n + j];
            for (int k = 0; k < j; ++k) s -= A[i * n + k] * A[j * n + k];
            A[i * n + j] = s / l;
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= A[i * n + k] * b[k];
        b[i] = s / A[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= A[k * n + i] * b[k];
        b[i] = s / A[i * n + i];
    }
    return b;
}

std::vector<double> jacobi_eigh(std::vector<double> A, int n, std::vector<double>* eigvecs) {
    if (static_cast<int>(A.size()) != n * n) throw std::runtime_error("jacobi_eigh: shape mismatch");
    std::vector<double> V(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) V[i * n + i] = 1.0;

    auto off = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += A[i * n + j] * A[i * n + j];
        return s;
    };

    for (int sweep = 0; sweep < 100 && off() > 1e-26 * n * n; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = A[p * n + p];
                const double aqq = A[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A[k * n + p];
                    const double akq = A[k * n + q];
                    A[k * n + p] = c * akp - s * akq;
                    A[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A[p * n + k];
                    const double aqk = A[q * n + k];
                    A[p * n + k] = c * apk - s * aqk;
                    A[q * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V[k * n + p];
                    const double vkq = V[k * n + q];
                    V[k * n + p] = c * vkp - s * vkq;
                    V[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return A[i * n + i] < A[j * n + j]; });

    std::vector<double> evals(n);
    for (int i = 0; i < n; ++i) evals[i] = A[order[i] * n + order[i]];
    if (eigvecs) {
        eigvecs->assign(static_cast<size_t>(n) * n, 0.0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) (*eigvecs)[i * n + j] = V[i * n + order[j]];
    }
    return evals;
}

std::vector<double> tridiag_eigenvalues(std::vector<double> alpha, std::vector<double> beta) {
    const int n = static_cast<int>(alpha.size());
    if (n == 0) return {};
    beta.resize(n, 0.0);  // beta[i] couples i and i+1; beta[n-1] unused
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(alpha[m]) + std::abs(alpha[m + 1]);
                if (std::abs(beta[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 50) throw std::runtime_error("tridiag_eigenvalues: no convergence");
            double g = (alpha[l + 1] - alpha[l]) / (2.0 * beta[l]);
            double r = std::hypot(g, 1.0);
            g = alpha[m] - alpha[l] + beta[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * beta[i];
                const double b = c * beta[i];
                r = std::hypot(f, g);
                beta[i + 1] = r;
                if (r == 0.0) {
                    alpha[i + 1] -= p;
                    beta[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = alpha[i + 1] - p;
                r = (alpha[i] - g) * s + 2.0 * c * b;
                p = s * r;
                alpha[i + 1] = g + p;
                g = c * r - b;
            }
            if (r == 0.0 && m - 1 >= l) continue;
            alpha[l] -= p;
            beta[l] = g;
            beta[m] = 0.0;
        }
    }
    std::sort(alpha.begin(), alpha.end());
    return alpha;
}

std::vector<double> tridiag_eigenvector(const std::vector<double>& alpha,
                                        const std::vector<double>& beta, double lam) {
    const int n = static_cast<int>(alpha.size());
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    // Inverse iteration on (T - shift I); the tiny offset keeps the Thomas
    // solve nonsingular when lam is an exact eigenvalue.
    const double shift = lam + 1e-12 * (1.0 + std::abs(lam));
    std::vector<double> c(n, 0.0), w(n);
    for (int pass = 0; pass < 4; ++pass) {
        w = v;
        double piv = alpha[0] - shift;
        if (std::abs(piv) < 1e-300) piv = 1e-300;
        if (n > 1) c[0] = beta[0] / piv;
        w[0] /= piv;
        for (int i = 1; i < n; ++i) {
            piv = (alpha[i] - shift) - beta[i - 1] * c[i - 1];
            if (std::abs(piv) < 1e-300) piv = 1e-300;
            if (i < n - 1) c[i] = beta[i] / piv;
            w[i] = (w[i] - beta[i - 1] * w[i - 1]) / piv;
        }
        for (int i = n - 2; i >= 0; --i) w[i] -= c[i] * w[i + 1];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) break;
        for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    return v;
}

}  // namespace qcurl
