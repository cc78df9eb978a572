#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qcurl/pauli.hpp"
#include "qcurl/state.hpp"

namespace qcurl {

enum class GateKind {
    FixedMatrix,
    RotationX,
    RotationY,
    RotationZ,
    TwoQubitPauliExp,
    Hadamard,
    Cnot,
    SqrtIswap,
};

// One gate. Rotations implement exp(-i * angle/2 * sigma); TwoQubitPauliExp
// implements exp(-i * angle * P0 P1); angle = param_scale * params[param_slot].
// Fixed kinds carry no parameter.
struct GateSpec {
    GateKind kind = GateKind::FixedMatrix;
    std::array<int, 2> targets{-1, -1};
    int num_targets = 0;
    int param_slot = -1;
    double param_scale = 1.0;
    Pauli p0 = Pauli::I;
    Pauli p1 = Pauli::I;
    std::shared_ptr<const Matrix> fixed;
};

GateSpec rotation_gate(GateKind axis, int target, int slot, double scale = 1.0);
GateSpec pauli_exp_gate(Pauli p0, Pauli p1, int t0, int t1, int slot, double scale = 1.0);
GateSpec hadamard_gate(int target);
GateSpec cnot_gate(int control, int target);
GateSpec sqrt_iswap_gate(int t0, int t1);
GateSpec fixed_matrix_gate(Matrix m, std::vector<int> targets);

bool gate_trainable(const GateSpec& g);
// Derivative factor c of the resolved angle: the gate is exp(-i c a P) with
// P^2 = I, so df/da obeys the two-term shift rule with shift pi/(4c).
double generator_coeff(const GateSpec& g);

struct Circuit {
    int num_qubits = 0;
    int num_params = 0;
    std::vector<GateSpec> gates;

    explicit Circuit(int q = 0) : num_qubits(q) {}
    // Validates target range/distinctness and the slot rules (trainable kinds
    // must carry a slot, fixed kinds must not). Slots may be shared.
    void add(GateSpec g);
};

// Per-gate resolved angles (param_scale * params[slot]; 0 for fixed kinds).
std::vector<double> resolve_angles(const Circuit& c, std::span<const double> params);

void apply_gate_angle(StateVector& s, const GateSpec& g, double angle, bool adjoint_gate);
// Applies the generator P of a trainable gate (sigma axis or the Pauli pair).
void apply_generator(StateVector& s, const GateSpec& g);
PauliTerm generator_term(const GateSpec& g);

void apply_circuit(const Circuit& c, std::span<const double> angles, StateVector& s);
void apply_circuit_params(const Circuit& c, std::span<const double> params, StateVector& s);

// Full matrix of the circuit, by applying it to every basis state. Guarded to
// num_qubits <= 6.
Matrix circuit_unitary(const Circuit& c, std::span<const double> params);

// One line per gate: kind, targets, slot, scale (and generator / matrix data
// where applicable). For debugging and golden tests.
std::string circuit_to_text(const Circuit& c);

}  // namespace qcurl
