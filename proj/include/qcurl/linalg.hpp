#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qcurl {

using cd = std::complex<double>;

// Dense row-major complex matrix. Small sizes only (gate blocks, circuit
// unitaries up to 64x64, Hamiltonians up to 1024x1024 in tests).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<cd> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cd& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const cd& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n);
};

Matrix matmul(const Matrix& x, const Matrix& y);
Matrix adjoint(const Matrix& m);
Matrix kron(const Matrix& x, const Matrix& y);
cd trace(const Matrix& m);
double max_abs_diff(const Matrix& x, const Matrix& y);
bool is_unitary(const Matrix& m, double tol);

// Scaling-and-squaring Taylor exponential; fine for the small generators here.
Matrix matrix_exp(const Matrix& m);

// Cholesky solve for a symmetric positive definite system Ax = b (row-major,
// n x n). Throws std::runtime_error if the factorization breaks down.
std::vector<double> solve_spd(std::vector<double> A, std::vector<double> b, int n);

// Cyclic Jacobi eigensolver for a real symmetric matrix (row-major, n x n).
// Returns eigenvalues ascending; if eigvecs != nullptr it receives the
// matching eigenvectors as columns (row-major n x n).
std::vector<double> jacobi_eigh(std::vector<double> A, int n, std::vector<double>* eigvecs);

// Eigenvalues of a symmetric tridiagonal matrix (diag alpha, offdiag beta),
// ascending. Implicit-shift QL, values only.
std::vector<double> tridiag_eigenvalues(std::vector<double> alpha, std::vector<double> beta);

// Eigenvector of the tridiagonal matrix for an isolated eigenvalue lam,
// by inverse iteration. Returns a unit vector.
std::vector<double> tridiag_eigenvector(const std::vector<double>& alpha,
                                        const std::vector<double>& beta, double lam);

}  // namespace qcurl
