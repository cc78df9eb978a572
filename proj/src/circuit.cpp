#include "qcurl/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qcurl {

GateSpec rotation_gate(GateKind axis, int target, int slot, double scale) {
    if (axis != GateKind::RotationX && axis != GateKind::RotationY && axis != GateKind::RotationZ)
        throw std::runtime_error("rotation_gate: not a rotation kind");
    GateSpec g;
    g.kind = axis;
    g.targets = {target, -1};
    g.num_targets = 1;
    g.param_slot = slot;
    g.param_scale = scale;
    return g;
}

GateSpec pauli_exp_gate(Pauli p0, Pauli p1, int t0, int t1, int slot, double scale) {
    GateSpec g;
    g.kind = GateKind::TwoQubitPauliExp;
    g.targets = {t0, t1};
    g.num_targets = 2;
    g.param_slot = slot;
    g.param_scale = scale;
    g.p0 = p0;
    g.p1 = p1;
    return g;
}

GateSpec hadamard_gate(int target) {
    GateSpec g;
    g.kind = GateKind::Hadamard;
    g.targets = {target, -1};
    g.num_targets = 1;
    return g;
}

GateSpec cnot_gate(int control, int target) {
    GateSpec g;
    g.kind = GateKind::Cnot;
    g.targets = {control, target};
    g.num_targets = 2;
    return g;
}

GateSpec sqrt_iswap_gate(int t0, int t1) {
    GateSpec g;
    g.kind = GateKind::SqrtIswap;
    g.targets = {t0, t1};
    g.num_targets = 2;
    return g;
}

GateSpec fixed_matrix_gate(Matrix m, std::vector<int> targets) {
    GateMatrix checked(m, targets);  // reuse unitarity/target validation
    GateSpec g;
    g.kind = GateKind::FixedMatrix;
    g.num_targets = static_cast<int>(targets.size());
    g.targets = {targets[0], g.num_targets == 2 ? targets[1] : -1};
    g.fixed = std::make_shared<const Matrix>(std::move(checked.m));
    return g;
}

bool gate_trainable(const GateSpec& g) {
    switch (g.kind) {
        case GateKind::RotationX:
        case GateKind::RotationY:
        case GateKind::RotationZ:
        case GateKind::TwoQubitPauliExp:
            return true;
        default:
            return false;
    }
}

double generator_coeff(const GateSpec& g) {
    switch (g.kind) {
        case GateKind::RotationX:
        case GateKind::RotationY:
        case GateKind::RotationZ:
            return 0.5;
        case GateKind::TwoQubitPauliExp:
            return 1.0;
        default:
            throw std::runtime_error("generator_coeff: gate has no generator");
    }
}

void Circuit::add(GateSpec g) {
    if (g.num_targets < 1 || g.num_targets > 2) throw std::runtime_error("Circuit::add: bad target count");
    for (int i = 0; i < g.num_targets; ++i) {
        if (g.targets[i] < 0 || g.targets[i] >= num_qubits)
            throw std::runtime_error("Circuit::add: target out of range");
    }
    if (g.num_targets == 2 && g.targets[0] == g.targets[1])
        throw std::runtime_error("Circuit::add: duplicate target");
    if (gate_trainable(g)) {
        if (g.param_slot < 0) throw std::runtime_error("Circuit::add: trainable gate needs a slot");
        if (g.param_scale == 0.0) throw std::runtime_error("Circuit::add: zero parameter scale");
        if (g.kind == GateKind::TwoQubitPauliExp && g.p0 == Pauli::I && g.p1 == Pauli::I)
            throw std::runtime_error("Circuit::add: identity generator");
        num_params = std::max(num_params, g.param_slot + 1);
    } else if (g.param_slot != -1) {
        throw std::runtime_error("Circuit::add: fixed gate must not carry a slot");
    }
    gates.push_back(std::move(g));
}

std::vector<double> resolve_angles(const Circuit& c, std::span<const double> params) {
    if (static_cast<int>(params.size()) != c.num_params)
        throw std::runtime_error("resolve_angles: parameter count mismatch");
    std::vector<double> angles(c.gates.size(), 0.0);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const GateSpec& g = c.gates[i];
        if (gate_trainable(g)) angles[i] = g.param_scale * params[g.param_slot];
    }
    return angles;
}

PauliTerm generator_term(const GateSpec& g) {
    switch (g.kind) {
        case GateKind::RotationX: return {{g.targets[0], Pauli::X}};
        case GateKind::RotationY: return {{g.targets[0], Pauli::Y}};
        case GateKind::RotationZ: return {{g.targets[0], Pauli::Z}};
        case GateKind::TwoQubitPauliExp: {
            PauliTerm t;
            if (g.p0 != Pauli::I) t.factors.emplace_back(g.targets[0], g.p0);
            if (g.p1 != Pauli::I) t.factors.emplace_back(g.targets[1], g.p1);
            return t;
        }
        default:
            throw std::runtime_error("generator_term: gate has no generator");
    }
}

void apply_generator(StateVector& s, const GateSpec& g) { apply_pauli(s, generator_term(g)); }

namespace {

const Matrix& sqrt_iswap_matrix_cached() {
    static const Matrix m = [] {
        Matrix r = Matrix::identity(4);
        const double is2 = 1.0 / std::sqrt(2.0);
        r(1, 1) = is2;
        r(1, 2) = cd(0.0, is2);
        r(2, 1) = cd(0.0, is2);
        r(2, 2) = is2;
        return r;
    }();
    return m;
}

}  // namespace

void apply_gate_angle(StateVector& s, const GateSpec& g, double angle, bool adjoint_gate) {
    const double a = adjoint_gate ? -angle : angle;
    switch (g.kind) {
        case GateKind::RotationX: {
            const double h = 0.5 * a;
            const cd m[4] = {std::cos(h), cd(0.0, -std::sin(h)), cd(0.0, -std::sin(h)), std::cos(h)};
            apply_1q(s, m, g.targets[0]);
            return;
        }
        case GateKind::RotationY: {
            const double h = 0.5 * a;
            const cd m[4] = {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
            apply_1q(s, m, g.targets[0]);
            return;
        }
        case GateKind::RotationZ: {
            const double h = 0.5 * a;
            const cd m[4] = {std::exp(cd(0.0, -h)), 0.0, 0.0, std::exp(cd(0.0, h))};
            apply_1q(s, m, g.targets[0]);
            return;
        }
        case GateKind::TwoQubitPauliExp: {
            apply_pauli_exp(s, generator_term(g), a);
            return;
        }
        case GateKind::Hadamard:
            apply_hadamard(s, g.targets[0]);
            return;
        case GateKind::Cnot:
            apply_cnot(s, g.targets[0], g.targets[1]);
            return;
        case GateKind::SqrtIswap: {
            const Matrix& m = sqrt_iswap_matrix_cached();
            if (!adjoint_gate) {
                apply_2q(s, m.a.data(), g.targets[0], g.targets[1]);
            } else {
                const Matrix adj = adjoint(m);
                apply_2q(s, adj.a.data(), g.targets[0], g.targets[1]);
            }
            return;
        }
        case GateKind::FixedMatrix: {
            if (!adjoint_gate) {
                if (g.num_targets == 1)
                    apply_1q(s, g.fixed->a.data(), g.targets[0]);
                else
                    apply_2q(s, g.fixed->a.data(), g.targets[0], g.targets[1]);
            } else {
                const Matrix adj = adjoint(*g.fixed);
                if (g.num_targets == 1)
                    apply_1q(s, adj.a.data(), g.targets[0]);
                else
                    apply_2q(s, adj.a.data(), g.targets[0], g.targets[1]);
            }
            return;
        }
    }
    throw std::runtime_error("apply_gate_angle: unknown kind");
}

void apply_circuit(const Circuit& c, std::span<const double> angles, StateVector& s) {
    if (angles.size() != c.gates.size()) throw std::runtime_error("apply_circuit: angle count mismatch");
    if (s.num_qubits != c.num_qubits) throw std::runtime_error("apply_circuit: qubit count mismatch");
    for (size_t i = 0; i < c.gates.size(); ++i) apply_gate_angle(s, c.gates[i], angles[i], false);
}

void apply_circuit_params(const Circuit& c, std::span<const double> params, StateVector& s) {
    const std::vector<double> angles = resolve_angles(c, params);
    apply_circuit(c, angles, s);
}

Matrix circuit_unitary(const Circuit& c, std::span<const double> params) {
    if (c.num_qubits > 6) throw std::runtime_error("circuit_unitary: guarded to at most 6 qubits");
    if (c.num_qubits < 1) throw std::runtime_error("circuit_unitary: empty circuit register");
    const std::vector<double> angles = resolve_angles(c, params);
    const int n = 1 << c.num_qubits;
    Matrix u(n, n);
    for (int j = 0; j < n; ++j) {
        StateVector s = basis_state(c.num_qubits, j);
        apply_circuit(c, angles, s);
        for (int i = 0; i < n; ++i) u(i, j) = s.amp[i];
    }
    return u;
}

std::string circuit_to_text(const Circuit& c) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "qubits %d params %d\n", c.num_qubits, c.num_params);
    out += buf;
    for (const GateSpec& g : c.gates) {
        switch (g.kind) {
            case GateKind::RotationX:
            case GateKind::RotationY:
            case GateKind::RotationZ: {
                const char axis = g.kind == GateKind::RotationX ? 'x'
                                : g.kind == GateKind::RotationY ? 'y'
                                                                : 'z';
                std::snprintf(buf, sizeof(buf), "r%c %d slot %d scale %.17g\n", axis, g.targets[0],
                              g.param_slot, g.param_scale);
                break;
            }
            case GateKind::TwoQubitPauliExp:
                std::snprintf(buf, sizeof(buf), "pexp %c%c %d %d slot %d scale %.17g\n",
                              pauli_char(g.p0), pauli_char(g.p1), g.targets[0], g.targets[1],
                              g.param_slot, g.param_scale);
                break;
            case GateKind::Hadamard:
                std::snprintf(buf, sizeof(buf), "h %d\n", g.targets[0]);
                break;
            case GateKind::Cnot:
                std::snprintf(buf, sizeof(buf), "cnot %d %d\n", g.targets[0], g.targets[1]);
                break;
            case GateKind::SqrtIswap:
                std::snprintf(buf, sizeof(buf), "siswap %d %d\n", g.targets[0], g.targets[1]);
                break;
            case GateKind::FixedMatrix: {
                if (g.num_targets == 1)
                    std::snprintf(buf, sizeof(buf), "fixed %d dim %d\n", g.targets[0], g.fixed->rows);
                else
                    std::snprintf(buf, sizeof(buf), "fixed %d %d dim %d\n", g.targets[0], g.targets[1],
                                  g.fixed->rows);
                out += buf;
                for (int i = 0; i < g.fixed->rows; ++i) {
                    std::string row = "  ";
                    for (int j = 0; j < g.fixed->cols; ++j) {
                        std::snprintf(buf, sizeof(buf), "(%.17g,%.17g) ", (*g.fixed)(i, j).real(),
                                      (*g.fixed)(i, j).imag());
                        row += buf;
                    }
                    row += '\n';
                    out += row;
                }
                continue;
            }
        }
        out += buf;
    }
    return out;
}

}  // namespace qcurl
