#include "qcurl/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcurl {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
    }
    throw std::runtime_error("pauli_from_char: unknown symbol");
}

namespace {

struct TermMasks {
    size_t flip = 0;   // qubits carrying X or Y
    size_t sign = 0;   // qubits carrying Y or Z: contribute (-1)^bit
    int y_count = 0;
};

TermMasks term_masks(const StateVector& s, const PauliTerm& term) {
    TermMasks m;
    size_t seen = 0;
    for (const auto& [q, p] : term.factors) {
        if (q < 0 || q >= s.num_qubits) throw std::runtime_error("pauli: qubit out of range");
        const size_t bit = size_t(1) << q;
        if (seen & bit) throw std::runtime_error("pauli: duplicate qubit in term");
        seen |= bit;
        switch (p) {
            case Pauli::I: break;
            case Pauli::X: m.flip |= bit; break;
            case Pauli::Y:
                m.flip |= bit;
                m.sign |= bit;
                ++m.y_count;
                break;
            case Pauli::Z: m.sign |= bit; break;
        }
    }
    return m;
}

cd y_phase(int y_count) {
    switch (y_count & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

void apply_pauli(StateVector& s, const PauliTerm& term) {
    const TermMasks m = term_masks(s, term);
    const cd yp = y_phase(m.y_count);
    const size_t n = s.dim();
    cd* a = s.amp.data();
    if (m.flip == 0) {
        for (size_t i = 0; i < n; ++i) {
            const bool neg = std::popcount(i & m.sign) & 1;
            a[i] *= neg ? -yp : yp;
        }
        return;
    }
    const size_t low = m.flip & (~m.flip + 1);
    for (size_t i = 0; i < n; ++i) {
        if (i & low) continue;
        const size_t j = i ^ m.flip;
        // P|i> = ph(i) |i^flip>, so the new a[j] comes from the old a[i].
        const cd pi = (std::popcount(i & m.sign) & 1) ? -yp : yp;
        const cd pj = (std::popcount(j & m.sign) & 1) ? -yp : yp;
        const cd ai = a[i];
        a[i] = pj * a[j];
        a[j] = pi * ai;
    }
}

void apply_pauli_exp(StateVector& s, const PauliTerm& term, double a) {
    const TermMasks m = term_masks(s, term);
    const cd yp = y_phase(m.y_count);
    const cd c(std::cos(a), 0.0);
    const cd ms = cd(0.0, -std::sin(a));
    const size_t n = s.dim();
    cd* v = s.amp.data();
    if (m.flip == 0) {
        const cd f0 = c + ms * yp;
        const cd f1 = c - ms * yp;
        for (size_t i = 0; i < n; ++i) v[i] *= (std::popcount(i & m.sign) & 1) ? f1 : f0;
        return;
    }
    const cd msp = ms * yp;
    const size_t low = m.flip & (~m.flip + 1);
    for (size_t i = 0; i < n; ++i) {
        if (i & low) continue;
        const size_t j = i ^ m.flip;
        const cd phi = (std::popcount(i & m.sign) & 1) ? -msp : msp;
        const cd phj = (std::popcount(j & m.sign) & 1) ? -msp : msp;
        const cd vi = v[i];
        const cd vj = v[j];
        v[i] = c * vi + phj * vj;
        v[j] = c * vj + phi * vi;
    }
}

double pauli_expectation(const StateVector& s, const PauliTerm& term) {
    return pauli_bilinear(s, s, term).real();
}

cd pauli_bilinear(const StateVector& a, const StateVector& b, const PauliTerm& term) {
    if (a.dim() != b.dim()) throw std::runtime_error("pauli_bilinear: dimension mismatch");
    const TermMasks m = term_masks(a, term);
    const cd yp = y_phase(m.y_count);
    const size_t n = a.dim();
    cd acc = 0.0;
    // <a|P|b> = sum_i conj(a[i^flip]) ph(i) b[i]
    for (size_t i = 0; i < n; ++i) {
        const cd ph = (std::popcount(i & m.sign) & 1) ? -yp : yp;
        acc += std::conj(a.amp[i ^ m.flip]) * ph * b.amp[i];
    }
    return acc;
}

}  // namespace qcurl
