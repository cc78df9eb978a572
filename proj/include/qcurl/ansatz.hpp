#pragma once

#include <cstdint>
#include <vector>

#include "qcurl/circuit.hpp"

namespace qcurl {

// exp(i pi/8 (XX + YY)): maps |01> -> (|01> + i|10>)/sqrt(2).
Matrix sqrt_iswap_matrix();

// Hardware-efficient ansatz. Per qubit a rotation block RZ then RY (two fresh
// slots, assigned in gate order); an initial block layer, then layer_count
// repetitions of [CNOT chain (q, q+1), block layer]. 2*Q*(layer_count+1)
// parameters, (Q-1)*layer_count CNOTs.
Circuit build_hea(int num_qubits, int layer_count);

// Target-family member: layer = [RZ(beta_l[q]) on every qubit, sqrt(iSWAP) on
// (j, j+1) chain]. variational_layers layers drawn from beta_seed (the draw is
// a prefix across members sharing beta_seed), then fixed_layers layers of the
// same template drawn from fixed_seed. All angles are baked into params.
struct TargetUnitary {
    Circuit circuit;
    std::vector<double> params;
    int variational_layers = 0;
    int fixed_layers = 0;

    void apply(StateVector& s) const { apply_circuit_params(circuit, params, s); }
};

TargetUnitary build_xy_target(int num_qubits, int variational_layers, int fixed_layers,
                              std::uint64_t beta_seed, std::uint64_t fixed_seed);

enum class QcnnVariant { Main, Heatmap };

// Main: conv stages of 15 shared two-qubit Pauli exponentials on the adjacent
// pairs of the active qubits, halving the register after each stage by keeping
// the higher qubit of each disjoint pair, down to 2 qubits; a 15-parameter
// fully connected gate on the final pair; Hadamard on the surviving qubit
// (always qubit Q-1), which is the Z readout. Q=8 -> 60 parameters.
// Heatmap: depth 5 alternation of a 15-parameter two-qubit layer on (k, k+1)
// periodic pairs and a 3-parameter single-qubit layer exp(-i t X/Y/Z), all
// parameters shared within a layer; same readout. Q=8 -> 90 parameters.
struct QcnnModel {
    Circuit circuit;
    int readout_qubit = 0;
    QcnnVariant variant = QcnnVariant::Main;
};

QcnnModel build_qcnn(int num_qubits, QcnnVariant variant);

// The 15 two-qubit generators in lexicographic {I,X,Y,Z}x{I,X,Y,Z} order with
// II removed; pair.first acts on the first target.
const std::vector<std::pair<Pauli, Pauli>>& two_qubit_generators();

}  // namespace qcurl
