#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qsc/linalg.hpp"

namespace qsc::states {

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

struct QuantumState {
  int n_qubits = 0;
  linalg::ComplexMatrix rho;
  std::optional<linalg::ComplexVector> pure_vector;
  bool real_flag = false;  // rho* == rho entrywise within 1e-12

  bool is_pure() const { return pure_vector.has_value(); }
  Eigen::Index dim() const { return rho.rows(); }
};

QuantumState bell_state(Bell which);

// Amplitude vector of power-of-two length >= 2, unit norm within 1e-12
// (or pass normalize=true).
QuantumState pure_state(const linalg::ComplexVector& amplitudes,
                        bool normalize = false);

// rho = sum_i p_i |psi_i><psi_i| from (weight, normalized vector) components.
QuantumState mixed_state(
    const std::vector<std::pair<double, linalg::ComplexVector>>& components);

// |Psi> = sum_i sqrt(p_i) |e_i>|i> on a doubled register, built from the
// eigendecomposition of rho (ancilla index = eigenbasis index, ascending
// eigenvalues). Partial trace over the ancilla half reproduces rho.
QuantumState purify(const QuantumState& state);

// Reduced density matrix over the kept qubits (strictly ascending indices).
linalg::ComplexMatrix partial_trace(const QuantumState& state,
                                    const std::vector<int>& keep);

}  // namespace qsc::states
