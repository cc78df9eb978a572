#include "qcurl/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcurl/rng.hpp"

namespace qcurl {

Matrix sqrt_iswap_matrix() {
    Matrix r = Matrix::identity(4);
    const double is2 = 1.0 / std::sqrt(2.0);
    r(1, 1) = is2;
    r(1, 2) = cd(0.0, is2);
    r(2, 1) = cd(0.0, is2);
    r(2, 2) = is2;
    return r;
}

Circuit build_hea(int num_qubits, int layer_count) {
    if (num_qubits < 2) throw std::runtime_error("build_hea: need at least 2 qubits");
    if (layer_count < 0) throw std::runtime_error("build_hea: negative layer count");
    Circuit c(num_qubits);
    int slot = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < num_qubits; ++q) {
            c.add(rotation_gate(GateKind::RotationZ, q, slot++));
            c.add(rotation_gate(GateKind::RotationY, q, slot++));
        }
    };
    rotation_layer();
    for (int l = 0; l < layer_count; ++l) {
        for (int q = 0; q + 1 < num_qubits; ++q) c.add(cnot_gate(q, q + 1));
        rotation_layer();
    }
    return c;
}

TargetUnitary build_xy_target(int num_qubits, int variational_layers, int fixed_layers,
                              std::uint64_t beta_seed, std::uint64_t fixed_seed) {
    if (num_qubits < 2) throw std::runtime_error("build_xy_target: need at least 2 qubits");
    if (variational_layers < 0 || fixed_layers < 0)
        throw std::runtime_error("build_xy_target: negative layer count");

    TargetUnitary t;
    t.circuit = Circuit(num_qubits);
    t.variational_layers = variational_layers;
    t.fixed_layers = fixed_layers;

    // Small angles keep each extra layer a gentle perturbation, so depth
    // difference translates into a graded similarity between tasks instead of
    // every pair looking maximally distant.
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 4.0);
    auto emit_layers = [&](int layers, std::mt19937_64& rng) {
        for (int l = 0; l < layers; ++l) {
            for (int q = 0; q < num_qubits; ++q) {
                const int slot = static_cast<int>(t.params.size());
                t.params.push_back(angle(rng));
                t.circuit.add(rotation_gate(GateKind::RotationZ, q, slot));
            }
            for (int q = 0; q + 1 < num_qubits; ++q) t.circuit.add(sqrt_iswap_gate(q, q + 1));
        }
    };
    std::mt19937_64 beta_rng = make_rng(beta_seed);
    emit_layers(variational_layers, beta_rng);
    std::mt19937_64 fixed_rng = make_rng(fixed_seed);
    emit_layers(fixed_layers, fixed_rng);
    return t;
}

const std::vector<std::pair<Pauli, Pauli>>& two_qubit_generators() {
    static const std::vector<std::pair<Pauli, Pauli>> gens = [] {
        std::vector<std::pair<Pauli, Pauli>> g;
        const Pauli order[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
        for (Pauli a : order)
            for (Pauli b : order) {
                if (a == Pauli::I && b == Pauli::I) continue;
                g.emplace_back(a, b);
            }
        return g;
    }();
    return gens;
}

namespace {

void add_conv_gate(Circuit& c, int t0, int t1, int slot_base) {
    int k = 0;
    for (const auto& [a, b] : two_qubit_generators()) {
        c.add(pauli_exp_gate(a, b, t0, t1, slot_base + k));
        ++k;
    }
}

}  // namespace

QcnnModel build_qcnn(int num_qubits, QcnnVariant variant) {
    if (num_qubits < 2) throw std::runtime_error("build_qcnn: need at least 2 qubits");
    QcnnModel model;
    model.variant = variant;
    model.circuit = Circuit(num_qubits);
    model.readout_qubit = num_qubits - 1;
    Circuit& c = model.circuit;

    if (variant == QcnnVariant::Main) {
        if ((num_qubits & (num_qubits - 1)) != 0)
            throw std::runtime_error("build_qcnn: main variant needs a power-of-two register");
        std::vector<int> active(num_qubits);
        for (int q = 0; q < num_qubits; ++q) active[q] = q;
        int slot = 0;
        while (static_cast<int>(active.size()) > 2) {
            for (size_t j = 0; j + 1 < active.size(); ++j)
                add_conv_gate(c, active[j], active[j + 1], slot);
            slot += 15;
            std::vector<int> kept;
            for (size_t j = 1; j < active.size(); j += 2) kept.push_back(active[j]);
            active = std::move(kept);
        }
        add_conv_gate(c, active[0], active[1], slot);  // final conv stage
        slot += 15;
        add_conv_gate(c, active[0], active[1], slot);  // fully connected layer
        slot += 15;
        model.readout_qubit = active[1];
        c.add(hadamard_gate(model.readout_qubit));
        return model;
    }

    const int depth = 5;
    int slot = 0;
    for (int d = 0; d < depth; ++d) {
        for (int q = 0; q < num_qubits; ++q) {
            int k = 0;
            for (const auto& [a, b] : two_qubit_generators()) {
                c.add(pauli_exp_gate(a, b, q, (q + 1) % num_qubits, slot + k));
                ++k;
            }
        }
        slot += 15;
        const GateKind axes[3] = {GateKind::RotationX, GateKind::RotationY, GateKind::RotationZ};
        for (int q = 0; q < num_qubits; ++q)
            for (int j = 0; j < 3; ++j) c.add(rotation_gate(axes[j], q, slot + j, 2.0));
        slot += 3;
    }
    c.add(hadamard_gate(model.readout_qubit));
    return model;
}

}  // namespace qcurl
