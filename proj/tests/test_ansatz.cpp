#include "doctest.h"

#include "qcurl/ansatz.hpp"
#include "qcurl/circuit.hpp"
#include "qcurl/linalg.hpp"
#include "qcurl/rng.hpp"
#include "qcurl/state.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace qcurl;

namespace {

constexpr cd kI(0.0, 1.0);

Matrix pauli_matrix(Pauli p) {
    Matrix m(2, 2);
    switch (p) {
        case Pauli::I: m(0, 0) = 1; m(1, 1) = 1; break;
        case Pauli::X: m(0, 1) = 1; m(1, 0) = 1; break;
        case Pauli::Y: m(0, 1) = -kI; m(1, 0) = kI; break;
        case Pauli::Z: m(0, 0) = 1; m(1, 1) = -1; break;
    }
    return m;
}

double state_diff(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.amp.size(); ++i) d = std::max(d, std::abs(a.amp[i] - b.amp[i]));
    return d;
}

}  // namespace

TEST_SUITE("ansatz") {

TEST_CASE("sqrt iswap equals the exponential of its generator") {
    // independent dense route: exp(i pi/8 (XX + YY)) on the low pair
    Matrix xx = kron(pauli_matrix(Pauli::X), pauli_matrix(Pauli::X));
    Matrix yy = kron(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
    Matrix gen(4, 4);
    for (size_t k = 0; k < gen.a.size(); ++k)
        gen.a[k] = kI * std::numbers::pi / 8.0 * (xx.a[k] + yy.a[k]);
    Matrix expect = matrix_exp(gen);
    CHECK(max_abs_diff(sqrt_iswap_matrix(), expect) < 1e-12);

    // |01> -> (|01> + i|10>)/sqrt(2), with qubit 0 the low index bit
    StateVector s = basis_state(2, 1);
    Circuit c(2);
    c.add(sqrt_iswap_gate(0, 1));
    apply_circuit_params(c, {}, s);
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(s.amp[1] - cd(r, 0)) < 1e-12);
    CHECK(std::abs(s.amp[2] - cd(0, r)) < 1e-12);
}

TEST_CASE("rotation gates implement exp(-i a/2 sigma)") {
    auto rng = make_rng(11);
    const double a = 1.234;
    const struct { GateKind kind; Pauli p; } cases[] = {
        {GateKind::RotationX, Pauli::X},
        {GateKind::RotationY, Pauli::Y},
        {GateKind::RotationZ, Pauli::Z},
    };
    for (auto [kind, p] : cases) {
        Circuit c(2);
        c.add(rotation_gate(kind, 1, 0));
        StateVector s = haar_state(2, HaarMode::Full, rng);
        StateVector fast = s;
        const std::vector<double> pv{a};
        apply_circuit_params(c, pv, fast);

        Matrix m = pauli_matrix(p);
        Matrix gen(2, 2);
        for (size_t k = 0; k < gen.a.size(); ++k) gen.a[k] = -kI * (a / 2.0) * m.a[k];
        Matrix u = matrix_exp(gen);
        StateVector slow = s;
        cd block[4] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
        apply_1q(slow, block, 1);
        CHECK(state_diff(fast, slow) < 1e-12);
    }
}

TEST_CASE("two qubit pauli exponential matches matrix_exp") {
    auto rng = make_rng(22);
    const double a = -0.771;
    Circuit c(3);
    c.add(pauli_exp_gate(Pauli::X, Pauli::Z, 2, 0, 0));
    StateVector s = haar_state(3, HaarMode::Full, rng);
    StateVector fast = s;
    const std::vector<double> pv{a};
    apply_circuit_params(c, pv, fast);

    // dense: exp(-i a X_2 Z_0); build on the full register
    Matrix full = Matrix::identity(1);
    const Pauli by_q[3] = {Pauli::Z, Pauli::I, Pauli::X};
    for (int q = 2; q >= 0; --q) full = kron(full, pauli_matrix(by_q[q]));
    Matrix gen(full.rows, full.cols);
    for (size_t k = 0; k < gen.a.size(); ++k) gen.a[k] = -kI * a * full.a[k];
    Matrix u = matrix_exp(gen);
    StateVector slow(3);
    for (int i = 0; i < u.rows; ++i) {
        cd acc = 0.0;
        for (int j = 0; j < u.cols; ++j) acc += u(i, j) * s.amp[j];
        slow.amp[i] = acc;
    }
    CHECK(state_diff(fast, slow) < 1e-12);
}

TEST_CASE("param scale multiplies the resolved angle") {
    Circuit c(1);
    c.add(rotation_gate(GateKind::RotationZ, 0, 0, 2.0));
    c.add(rotation_gate(GateKind::RotationZ, 0, 0));
    auto angles = resolve_angles(c, std::vector<double>{0.3});
    REQUIRE(angles.size() == 2);
    CHECK(angles[0] == doctest::Approx(0.6));
    CHECK(angles[1] == doctest::Approx(0.3));
}

TEST_CASE("adjoint application undoes a gate") {
    auto rng = make_rng(33);
    StateVector s = haar_state(2, HaarMode::Full, rng);
    for (const GateSpec& g : {rotation_gate(GateKind::RotationY, 0, 0),
                              pauli_exp_gate(Pauli::Y, Pauli::Y, 0, 1, 0),
                              sqrt_iswap_gate(0, 1), cnot_gate(1, 0), hadamard_gate(1)}) {
        StateVector t = s;
        apply_gate_angle(t, g, 0.91, false);
        apply_gate_angle(t, g, 0.91, true);
        CHECK(state_diff(t, s) < 1e-12);
    }
}

TEST_CASE("circuit validation") {
    Circuit c(2);
    CHECK_THROWS(c.add(rotation_gate(GateKind::RotationX, 2, 0)));  // target range
    CHECK_THROWS(c.add(cnot_gate(1, 1)));                           // distinct targets
    CHECK_THROWS(c.add(rotation_gate(GateKind::RotationX, 0, -1))); // trainable needs a slot
    GateSpec h = hadamard_gate(0);
    h.param_slot = 0;
    CHECK_THROWS(c.add(h));                                         // fixed must not carry one
    c.add(rotation_gate(GateKind::RotationX, 0, 3));
    CHECK(c.num_params == 4);  // slots may be sparse; count is max slot + 1
}

TEST_CASE("generator coefficients") {
    CHECK(generator_coeff(rotation_gate(GateKind::RotationY, 0, 0)) == doctest::Approx(0.5));
    CHECK(generator_coeff(pauli_exp_gate(Pauli::X, Pauli::X, 0, 1, 0)) == doctest::Approx(1.0));
    CHECK(generator_coeff(rotation_gate(GateKind::RotationY, 0, 0, 3.0)) == doctest::Approx(0.5));
    CHECK_THROWS(generator_coeff(hadamard_gate(0)));
    CHECK(gate_trainable(rotation_gate(GateKind::RotationZ, 0, 0)));
    CHECK(!gate_trainable(sqrt_iswap_gate(0, 1)));
}

TEST_CASE("hardware efficient ansatz structure") {
    const int q = 4, l = 3;
    Circuit c = build_hea(q, l);
    CHECK(c.num_params == 2 * q * (l + 1));
    int cnots = 0, rots = 0;
    std::set<int> slots;
    for (const GateSpec& g : c.gates) {
        if (g.kind == GateKind::Cnot) ++cnots;
        if (g.kind == GateKind::RotationY || g.kind == GateKind::RotationZ) {
            ++rots;
            slots.insert(g.param_slot);
        }
    }
    CHECK(cnots == (q - 1) * l);
    CHECK(rots == 2 * q * (l + 1));
    CHECK(static_cast<int>(slots.size()) == c.num_params);  // no slot sharing

    std::vector<double> params(c.num_params, 0.0);
    auto rng = make_rng(44);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (auto& p : params) p = u(rng);
    CHECK(is_unitary(circuit_unitary(c, params), 1e-9));
}

TEST_CASE("target family members share prefix and fixed block") {
    const int q = 3;
    TargetUnitary t3 = build_xy_target(q, 3, 2, 1001, 2002);
    TargetUnitary t5 = build_xy_target(q, 5, 2, 1001, 2002);

    CHECK(t3.params.size() == static_cast<size_t>(q * (3 + 2)));
    CHECK(t5.params.size() == static_cast<size_t>(q * (5 + 2)));
    // shallow member's variational angles are a prefix of the deeper one
    for (int i = 0; i < q * 3; ++i) CHECK(t3.params[i] == t5.params[i]);
    // fixed block identical regardless of the variational depth
    for (int i = 0; i < q * 2; ++i)
        CHECK(t3.params[q * 3 + i] == t5.params[q * 5 + i]);
    // drawn angles stay in the small-angle window
    for (double b : t5.params) {
        CHECK(b >= 0.0);
        CHECK(b < std::numbers::pi / 4.0);
    }
    // different fixed seed changes only the fixed block
    TargetUnitary o = build_xy_target(q, 3, 2, 1001, 9009);
    for (int i = 0; i < q * 3; ++i) CHECK(o.params[i] == t3.params[i]);
    bool fixed_changed = false;
    for (int i = 0; i < q * 2; ++i) fixed_changed |= o.params[q * 3 + i] != t3.params[q * 3 + i];
    CHECK(fixed_changed);

    StateVector s = zero_state(q);
    t3.apply(s);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK_THROWS(build_xy_target(1, 2, 2, 0, 0));
    CHECK_THROWS(build_xy_target(3, -1, 2, 0, 0));
}

TEST_CASE("qcnn main variant") {
    QcnnModel m8 = build_qcnn(8, QcnnVariant::Main);
    CHECK(m8.circuit.num_params == 60);
    CHECK(m8.readout_qubit == 7);
    CHECK(m8.variant == QcnnVariant::Main);

    QcnnModel m4 = build_qcnn(4, QcnnVariant::Main);
    CHECK(m4.readout_qubit == 3);
    CHECK(m4.circuit.num_params % 15 == 0);
    // ends with a hadamard on the readout qubit
    const GateSpec& last = m4.circuit.gates.back();
    CHECK(last.kind == GateKind::Hadamard);
    CHECK(last.targets[0] == m4.readout_qubit);

    // parameters shared across gates within a layer: more trainable gate
    // occurrences than slots
    int trainable = 0;
    for (const GateSpec& g : m8.circuit.gates) trainable += gate_trainable(g) ? 1 : 0;
    CHECK(trainable > m8.circuit.num_params);

    std::vector<double> params(m4.circuit.num_params, 0.37);
    CHECK(is_unitary(circuit_unitary(m4.circuit, params), 1e-9));
}

TEST_CASE("qcnn heatmap variant") {
    QcnnModel m = build_qcnn(8, QcnnVariant::Heatmap);
    CHECK(m.circuit.num_params == 90);
    CHECK(m.readout_qubit == 7);
    // periodic pair layers: some two-qubit gate touches the (7, 0) wrap pair
    bool wrap = false;
    for (const GateSpec& g : m.circuit.gates)
        if (g.num_targets == 2 &&
            ((g.targets[0] == 7 && g.targets[1] == 0) || (g.targets[0] == 0 && g.targets[1] == 7)))
            wrap = true;
    CHECK(wrap);
    // single-qubit layers carry scale 2 so the shift rule stays exact
    bool scaled = false;
    for (const GateSpec& g : m.circuit.gates)
        if (gate_trainable(g) && g.param_scale == 2.0) scaled = true;
    CHECK(scaled);
}

TEST_CASE("two qubit generator list") {
    const auto& gens = two_qubit_generators();
    REQUIRE(gens.size() == 15);
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : gens) {
        CHECK(!(a == Pauli::I && b == Pauli::I));
        seen.insert({static_cast<int>(a), static_cast<int>(b)});
    }
    CHECK(seen.size() == 15);
    CHECK(gens.front().first == Pauli::I);
    CHECK(gens.front().second == Pauli::X);
}

TEST_CASE("circuit text dump covers every gate") {
    Circuit c = build_hea(2, 1);
    const std::string txt = circuit_to_text(c);
    size_t lines = 0;
    for (char ch : txt) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == c.gates.size() + 1);  // header line plus one per gate
}

}  // TEST_SUITE
