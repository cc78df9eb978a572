#include "qcurl/cluster_ising.hpp"

#include "qcurl/linalg.hpp"
#include "qcurl/pauli.hpp"
#include "qcurl/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcurl {

void validate_hamiltonian(const HamiltonianSpec& spec) {
    const int q = spec.num_qubits;
    if (spec.boundary == Boundary::Open ? q < 2 : q < 3)
        throw std::runtime_error("cluster Hamiltonian: chain too short");
    if (!std::isfinite(spec.h1) || !std::isfinite(spec.h2))
        throw std::runtime_error("cluster Hamiltonian: fields must be finite");
}

void cluster_matvec(const HamiltonianSpec& spec, const std::vector<double>& x,
                    std::vector<double>& y) {
    validate_hamiltonian(spec);
    const int q = spec.num_qubits;
    const std::uint64_t n = std::uint64_t{1} << q;
    if (x.size() != n) throw std::runtime_error("cluster_matvec: length mismatch");
    y.assign(n, 0.0);
    const bool wrap = spec.boundary == Boundary::Periodic;

    const int zxz_terms = wrap ? q : q - 2;
    for (int j = 0; j < zxz_terms; ++j) {
        const std::uint64_t mz = (std::uint64_t{1} << j) | (std::uint64_t{1} << ((j + 2) % q));
        const std::uint64_t mx = std::uint64_t{1} << ((j + 1) % q);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double sgn = (std::popcount(i & mz) & 1) ? -1.0 : 1.0;
            y[i] -= sgn * x[i ^ mx];
        }
    }
    if (spec.h1 != 0.0) {
        for (int j = 0; j < q; ++j) {
            const std::uint64_t mx = std::uint64_t{1} << j;
            for (std::uint64_t i = 0; i < n; ++i) y[i] -= spec.h1 * x[i ^ mx];
        }
    }
    if (spec.h2 != 0.0) {
        const int xx_terms = wrap ? q : q - 1;
        for (int j = 0; j < xx_terms; ++j) {
            const std::uint64_t mx = (std::uint64_t{1} << j) | (std::uint64_t{1} << ((j + 1) % q));
            for (std::uint64_t i = 0; i < n; ++i) y[i] -= spec.h2 * x[i ^ mx];
        }
    }
}

std::vector<double> cluster_dense(const HamiltonianSpec& spec) {
    validate_hamiltonian(spec);
    if (spec.num_qubits > 6) throw std::runtime_error("cluster_dense: use the matvec above Q=6");
    const std::uint64_t n = std::uint64_t{1} << spec.num_qubits;
    std::vector<double> m(n * n), e(n, 0.0), col;
    for (std::uint64_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        cluster_matvec(spec, e, col);
        e[j] = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) m[i * n + j] = col[i];
    }
    return m;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Lowest eigenpair restricted to the complement of `deflate` (if given).
// Full reorthogonalization, deterministic start vector, Ritz restarts.
void lanczos_lowest(const HamiltonianSpec& spec, const std::vector<double>* deflate,
                    double& value, std::vector<double>& vec) {
    const std::uint64_t n = std::uint64_t{1} << spec.num_qubits;
    const int m_max = static_cast<int>(std::min<std::uint64_t>(n, 220));

    // A deflated run needs a start vector independent of the first pass: the
    // first Ritz vector absorbs the start's entire component inside a
    // degenerate ground space, so reusing the same start would leave nothing
    // for the second pass to find there.
    auto rng = make_rng(deflate ? 0xdef1a7ed5eedULL : 0x5eedc1a55e57ULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = nd(rng);
    if (deflate) {
        const double c = dot(*deflate, v);
        for (std::uint64_t i = 0; i < n; ++i) v[i] -= c * (*deflate)[i];
    }
    {
        const double s = nrm(v);
        if (s < 1e-14) throw std::runtime_error("lanczos: start vector vanished");
        for (double& x : v) x /= s;
    }

    std::vector<double> w, ritz;
    for (int restart = 0; restart < 4; ++restart) {
        std::vector<std::vector<double>> basis{v};
        std::vector<double> alpha, beta;
        double theta = 0.0;
        bool exhausted = false;

        for (int k = 0; k < m_max; ++k) {
            cluster_matvec(spec, basis[k], w);
            if (k > 0)
                for (std::uint64_t i = 0; i < n; ++i) w[i] -= beta[k - 1] * basis[k - 1][i];
            const double a = dot(basis[k], w);
            alpha.push_back(a);
            for (std::uint64_t i = 0; i < n; ++i) w[i] -= a * basis[k][i];
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& u : basis) {
                    const double c = dot(u, w);
                    for (std::uint64_t i = 0; i < n; ++i) w[i] -= c * u[i];
                }
                if (deflate) {
                    const double c = dot(*deflate, w);
                    for (std::uint64_t i = 0; i < n; ++i) w[i] -= c * (*deflate)[i];
                }
            }
            const double b = nrm(w);

            theta = tridiag_eigenvalues(alpha, beta)[0];
            const std::vector<double> s = tridiag_eigenvector(alpha, beta, theta);
            const double resid_est = b * std::abs(s.back());
            const bool breakdown = b < 1e-13;
            if (resid_est < 1e-11 || breakdown || k + 1 == m_max ||
                alpha.size() == static_cast<size_t>(n)) {
                ritz.assign(n, 0.0);
                for (size_t t = 0; t < basis.size(); ++t)
                    for (std::uint64_t i = 0; i < n; ++i) ritz[i] += s[t] * basis[t][i];
                const double rs = nrm(ritz);
                for (double& x : ritz) x /= rs;
                exhausted = breakdown || alpha.size() == static_cast<size_t>(n);
                break;
            }
            beta.push_back(b);
            for (double& x : w) x /= b;
            basis.push_back(w);
        }

        cluster_matvec(spec, ritz, w);
        double res = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double r = w[i] - theta * ritz[i];
            res += r * r;
        }
        if (std::sqrt(res) <= 1e-8 || exhausted) {
            value = theta;
            vec = std::move(ritz);
            return;
        }
        v = ritz;
    }
    throw std::runtime_error("lanczos: no convergence");
}

}  // namespace

GroundStateResult ground_state(const HamiltonianSpec& spec, bool compute_gap) {
    validate_hamiltonian(spec);
    if (spec.num_qubits > 10) throw std::runtime_error("ground_state: Q > 10 not supported");
    const std::uint64_t n = std::uint64_t{1} << spec.num_qubits;

    GroundStateResult out;
    std::vector<double> g;
    lanczos_lowest(spec, nullptr, out.energy, g);

    if (compute_gap) {
        double e2 = 0.0;
        std::vector<double> v2;
        lanczos_lowest(spec, &g, e2, v2);
        out.gap = e2 - out.energy;
        out.degenerate = out.gap < 1e-10;
    }

    double flip = 1.0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (std::abs(g[i]) > 1e-12) {
            flip = g[i] < 0.0 ? -1.0 : 1.0;
            break;
        }
    out.state = StateVector(spec.num_qubits);
    for (std::uint64_t i = 0; i < n; ++i) out.state.amp[i] = flip * g[i];
    return out;
}

int analytic_label(double h1, double h2) {
    if (h2 != 0.0) throw std::runtime_error("analytic_label: only valid on the h2=0 line");
    return h1 < 1.0 ? 1 : 0;
}

double string_order(const StateVector& s) {
    const int q = s.num_qubits;
    if (q < 4) throw std::runtime_error("string_order: needs at least 4 qubits");
    int jmax = q - 2;
    if (jmax % 2 == 0) --jmax;
    std::vector<std::pair<int, Pauli>> factors{{0, Pauli::Z}};
    for (int j = 1; j <= jmax; j += 2) factors.emplace_back(j, Pauli::X);
    factors.emplace_back(jmax + 1, Pauli::Z);
    return pauli_expectation(s, PauliTerm{std::move(factors)});
}

int string_order_label(const StateVector& s, double threshold) {
    return std::abs(string_order(s)) > threshold ? 1 : 0;
}

}  // namespace qcurl
