#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcurl/state.hpp"

namespace qcurl {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Sparse Pauli string: product of single-qubit Paulis on the listed qubits.
struct PauliTerm {
    std::vector<std::pair<int, Pauli>> factors;

    PauliTerm() = default;
    PauliTerm(std::initializer_list<std::pair<int, Pauli>> f) : factors(f) {}
    explicit PauliTerm(std::vector<std::pair<int, Pauli>> f) : factors(std::move(f)) {}
};

// v <- P v, in place.
void apply_pauli(StateVector& s, const PauliTerm& term);

// v <- exp(-i a P) v, in place and allocation-free (P is involutory).
void apply_pauli_exp(StateVector& s, const PauliTerm& term, double a);

// <s|P|s>; real because P is Hermitian.
double pauli_expectation(const StateVector& s, const PauliTerm& term);

// <a|P|b>.
cd pauli_bilinear(const StateVector& a, const StateVector& b, const PauliTerm& term);

}  // namespace qcurl
