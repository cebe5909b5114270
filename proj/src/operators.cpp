#include "qsc/operators.hpp"

#include <stdexcept>
#include <string>

namespace qsc::ops {

using linalg::Complex;
using linalg::ComplexMatrix;

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'i';
    case Pauli::X: return 'x';
    case Pauli::Y: return 'y';
    case Pauli::Z: return 'z';
  }
  throw std::logic_error("pauli_char: bad label");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'i': case 'I': return Pauli::I;
    case 'x': case 'X': return Pauli::X;
    case 'y': case 'Y': return Pauli::Y;
    case 'z': case 'Z': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("pauli_from_char: unknown axis '") +
                              c + "', expected one of i, x, y, z");
}

ComplexMatrix pauli(Pauli p) {
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

ComplexMatrix embed_on_qubit(Pauli p, int qubit, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) {
    throw std::invalid_argument("embed_on_qubit: qubit count " +
                                std::to_string(n_qubits) +
                                " outside supported range [1, 10]");
  }
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("embed_on_qubit: qubit index " +
                                std::to_string(qubit) + " out of range [0, " +
                                std::to_string(n_qubits) + ")");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = linalg::kron(out, q == qubit ? pauli(p) : pauli(Pauli::I));
  }
  return out;
}

ComplexMatrix spin_flip_operator() {
  return linalg::kron(pauli(Pauli::Y), pauli(Pauli::Y));
}

namespace {

void certify_member(const ComplexMatrix& m, const char* name, double tol) {
  const double h = linalg::hermiticity_defect(m);
  if (h > tol) {
    throw std::invalid_argument(std::string("operator pair: ") + name +
                                " is not Hermitian, defect " + std::to_string(h) +
                                " exceeds " + std::to_string(tol));
  }
  const double u = linalg::unitarity_defect(m);
  if (u > tol) {
    throw std::invalid_argument(std::string("operator pair: ") + name +
                                " is not unitary, defect " + std::to_string(u) +
                                " exceeds " + std::to_string(tol));
  }
}

}  // namespace

OperatorPair make_pair(Pauli w_axis, Pauli v_axis, int qubit, int n_qubits) {
  OperatorPair pair;
  pair.w0 = embed_on_qubit(w_axis, qubit, n_qubits);
  pair.v = embed_on_qubit(v_axis, qubit, n_qubits);
  pair.labels = PairLabels{w_axis, v_axis, qubit};
  certify_member(pair.w0, "W(0)", linalg::kCertTol);
  certify_member(pair.v, "V", linalg::kCertTol);
  pair.certified = true;
  return pair;
}

OperatorPair make_custom_pair(ComplexMatrix w0, ComplexMatrix v, double tol) {
  if (w0.rows() != v.rows() || w0.cols() != v.cols()) {
    throw std::invalid_argument("operator pair: W(0) is " +
                                std::to_string(w0.rows()) + "x" +
                                std::to_string(w0.cols()) + " but V is " +
                                std::to_string(v.rows()) + "x" +
                                std::to_string(v.cols()));
  }
  certify_member(w0, "W(0)", tol);
  certify_member(v, "V", tol);
  OperatorPair pair;
  pair.w0 = std::move(w0);
  pair.v = std::move(v);
  pair.certified = true;
  return pair;
}

}  // namespace qsc::ops
