#pragma once

#include <optional>

#include "qsc/linalg.hpp"

namespace qsc::ops {

enum class Pauli { I, X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

linalg::ComplexMatrix pauli(Pauli p);

// Single-qubit operator on an n-qubit register. Qubit 0 is the leftmost
// Kronecker factor, i.e. the leftmost symbol in |q0 q1 ...>.
linalg::ComplexMatrix embed_on_qubit(Pauli p, int qubit, int n_qubits);

// sigma_y (x) sigma_y
linalg::ComplexMatrix spin_flip_operator();

struct PairLabels {
  Pauli w_axis;
  Pauli v_axis;
  int qubit;  // 0-based
};

// Scrambling pair {W(0), V}. Both members must be Hermitian and unitary;
// `certified` records that the checks ran.
struct OperatorPair {
  linalg::ComplexMatrix w0;
  linalg::ComplexMatrix v;
  std::optional<PairLabels> labels;
  bool certified = false;
};

OperatorPair make_pair(Pauli w_axis, Pauli v_axis, int qubit, int n_qubits);

// Certifies arbitrary matrices; throws std::invalid_argument naming the
// measured defect when either member fails Hermiticity or unitarity.
OperatorPair make_custom_pair(linalg::ComplexMatrix w0, linalg::ComplexMatrix v,
                              double tol = linalg::kCertTol);

}  // namespace qsc::ops
