#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qcurl/linalg.hpp"

namespace qcurl {

// Pure state on num_qubits qubits, little-endian: qubit 0 is the least
// significant bit of the amplitude index.
struct StateVector {
    int num_qubits = 0;
    std::vector<cd> amp;

    StateVector() = default;
    explicit StateVector(int q) : num_qubits(q), amp(static_cast<size_t>(1) << q) {}

    size_t dim() const { return amp.size(); }
    double norm() const;
    void normalize();
};

StateVector zero_state(int num_qubits);
StateVector basis_state(int num_qubits, size_t index);

// Unitary acting on one or two target qubits. Unitarity is checked once at
// construction (tolerance 1e-10); targets must be distinct and in range for
// the states it is applied to.
struct GateMatrix {
    Matrix m;
    std::vector<int> targets;

    GateMatrix(Matrix mat, std::vector<int> tq);
};

// In-place application by stride iteration; never materializes the full
// 2^Q x 2^Q operator. For two-qubit gates, targets[0] indexes the low bit of
// the 4x4 block.
void apply_gate(StateVector& s, const GateMatrix& g);

void apply_1q(StateVector& s, const cd m[4], int t);
void apply_2q(StateVector& s, const cd m[16], int t0, int t1);
void apply_cnot(StateVector& s, int control, int target);
void apply_hadamard(StateVector& s, int t);

cd overlap(const StateVector& a, const StateVector& b);    // <a|b>
double fidelity(const StateVector& a, const StateVector& b);  // |<a|b>|^2
double expval_z(const StateVector& s, int qubit);

enum class HaarMode { Full, Product };

// Haar-random pure state: Full draws a dense Gaussian vector and normalizes;
// Product tensors independent single-qubit Haar states.
StateVector haar_state(int num_qubits, HaarMode mode, std::mt19937_64& rng);

}  // namespace qcurl
