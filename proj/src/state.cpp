#include "qcurl/state.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qcurl {

double StateVector::norm() const {
    double s = 0.0;
    for (const cd& v : amp) s += std::norm(v);
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("normalize: zero vector");
    for (cd& v : amp) v /= n;
}

StateVector zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

StateVector basis_state(int num_qubits, size_t index) {
    if (num_qubits < 1) throw std::runtime_error("basis_state: need at least one qubit");
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::runtime_error("basis_state: index out of range");
    s.amp[index] = 1.0;
    return s;
}

GateMatrix::GateMatrix(Matrix mat, std::vector<int> tq) : m(std::move(mat)), targets(std::move(tq)) {
    if (targets.size() != 1 && targets.size() != 2)
        throw std::runtime_error("GateMatrix: only 1- or 2-qubit gates");
    const int want = 1 << targets.size();
    if (m.rows != want || m.cols != want)
        throw std::runtime_error("GateMatrix: matrix size does not match target count");
    if (targets.size() == 2 && targets[0] == targets[1])
        throw std::runtime_error("GateMatrix: duplicate target qubit");
    for (int t : targets)
        if (t < 0) throw std::runtime_error("GateMatrix: negative target");
    if (!is_unitary(m, 1e-10)) throw std::runtime_error("GateMatrix: matrix is not unitary");
}

void apply_1q(StateVector& s, const cd m[4], int t) {
    const size_t bit = size_t(1) << t;
    const size_t n = s.dim();
    cd* a = s.amp.data();
    for (size_t base = 0; base < n; base += 2 * bit) {
        for (size_t i = base; i < base + bit; ++i) {
            const cd v0 = a[i];
            const cd v1 = a[i | bit];
            a[i] = m[0] * v0 + m[1] * v1;
            a[i | bit] = m[2] * v0 + m[3] * v1;
        }
    }
}

void apply_2q(StateVector& s, const cd m[16], int t0, int t1) {
    const size_t b0 = size_t(1) << t0;
    const size_t b1 = size_t(1) << t1;
    const size_t n = s.dim();
    const size_t mask = b0 | b1;
    cd* a = s.amp.data();
    for (size_t i = 0; i < n; ++i) {
        if (i & mask) continue;
        const cd v0 = a[i];
        const cd v1 = a[i | b0];
        const cd v2 = a[i | b1];
        const cd v3 = a[i | mask];
        a[i] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
        a[i | b0] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
        a[i | b1] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
        a[i | mask] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
    }
}

void apply_cnot(StateVector& s, int control, int target) {
    const size_t cb = size_t(1) << control;
    const size_t tb = size_t(1) << target;
    const size_t n = s.dim();
    cd* a = s.amp.data();
    for (size_t i = 0; i < n; ++i)
        if ((i & cb) && !(i & tb)) std::swap(a[i], a[i | tb]);
}

void apply_hadamard(StateVector& s, int t) {
    static const double is2 = 1.0 / std::sqrt(2.0);
    const cd m[4] = {is2, is2, is2, -is2};
    apply_1q(s, m, t);
}

void apply_gate(StateVector& s, const GateMatrix& g) {
    for (int t : g.targets)
        if (t >= s.num_qubits) throw std::runtime_error("apply_gate: target out of range");
    if (g.targets.size() == 1) {
        apply_1q(s, g.m.a.data(), g.targets[0]);
    } else {
        apply_2q(s, g.m.a.data(), g.targets[0], g.targets[1]);
    }
}

cd overlap(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::runtime_error("overlap: dimension mismatch");
    cd s = 0.0;
    for (size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(overlap(a, b)); }

double expval_z(const StateVector& s, int qubit) {
    if (qubit < 0 || qubit >= s.num_qubits) throw std::runtime_error("expval_z: qubit out of range");
    const size_t bit = size_t(1) << qubit;
    double v = 0.0;
    for (size_t i = 0; i < s.dim(); ++i) {
        const double p = std::norm(s.amp[i]);
        v += (i & bit) ? -p : p;
    }
    return v;
}

StateVector haar_state(int num_qubits, HaarMode mode, std::mt19937_64& rng) {
    if (num_qubits < 1) throw std::runtime_error("haar_state: need at least one qubit");
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (mode == HaarMode::Full) {
        StateVector s(num_qubits);
        for (cd& v : s.amp) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v = cd(re, im);
        }
        s.normalize();
        return s;
    }
    StateVector s(num_qubits);
    std::vector<std::array<cd, 2>> locals(num_qubits);
    for (int q = 0; q < num_qubits; ++q) {
        cd a(gauss(rng), gauss(rng));
        cd b(gauss(rng), gauss(rng));
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        locals[q] = {a / n, b / n};
    }
    for (size_t i = 0; i < s.dim(); ++i) {
        cd v = 1.0;
        for (int q = 0; q < num_qubits; ++q) v *= locals[q][(i >> q) & 1];
        s.amp[i] = v;
    }
    return s;
}

}  // namespace qcurl
