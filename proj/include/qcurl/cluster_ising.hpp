#pragma once

#include "qcurl/state.hpp"

#include <vector>

namespace qcurl {

enum class Boundary { Open, Periodic };

// H = -sum_j Z_j X_{j+1} Z_{j+2} - h1 sum_j X_j - h2 sum_j X_j X_{j+1};
// the periodic variant wraps every sum around the ring
struct HamiltonianSpec {
    int num_qubits = 0;
    double h1 = 0.0;
    double h2 = 0.0;
    Boundary boundary = Boundary::Open;
};

// open needs Q >= 2 (the three-site sum may be empty), periodic Q >= 3
void validate_hamiltonian(const HamiltonianSpec& spec);

// y = H x on real vectors of length 2^Q; all matrix elements are real
void cluster_matvec(const HamiltonianSpec& spec, const std::vector<double>& x,
                    std::vector<double>& y);

// dense row-major real symmetric matrix; guarded to Q <= 6
std::vector<double> cluster_dense(const HamiltonianSpec& spec);

struct GroundStateResult {
    double energy = 0.0;
    StateVector state;
    // filled only when compute_gap was requested
    double gap = 0.0;
    bool degenerate = false;
};

// Lanczos with full reorthogonalization on the matrix-free matvec; residual
// ||H psi - E psi|| <= 1e-8, first nonzero amplitude made positive real.
// compute_gap runs a second pass deflated against the ground vector.
GroundStateResult ground_state(const HamiltonianSpec& spec, bool compute_gap = false);

// phase label on the exactly solvable h2 = 0 line: 1 while h1 < 1, else 0
int analytic_label(double h1, double h2);

// S = <Z_0 X_1 X_3 ... X_j Z_{j+1}> with j the largest odd index <= Q-2.
// This is a product of alternating cluster stabilizers, so it is +1 across
// the whole cluster-phase ground space and decays to 0 in the product phases.
double string_order(const StateVector& s);

int string_order_label(const StateVector& s, double threshold = 0.5);

}  // namespace qcurl
