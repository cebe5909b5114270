#include "qsc/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsc::states {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {

constexpr double kPsdTol = 1e-10;

bool is_power_of_two(Eigen::Index x) { return x >= 1 && (x & (x - 1)) == 0; }

int qubit_count_for(Eigen::Index dim, const char* who) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw std::invalid_argument(std::string(who) + ": dimension " +
                                std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

bool rho_is_real(const ComplexMatrix& rho) {
  for (Eigen::Index j = 0; j < rho.cols(); ++j)
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
      if (std::abs(rho(i, j).imag()) > 1e-12) return false;
  return true;
}

QuantumState from_vector(ComplexVector psi) {
  QuantumState s;
  s.n_qubits = qubit_count_for(psi.size(), "pure_state");
  s.rho = psi * psi.adjoint();
  s.real_flag = rho_is_real(s.rho);
  s.pure_vector = std::move(psi);
  return s;
}

}  // namespace

QuantumState bell_state(Bell which) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector psi = ComplexVector::Zero(4);
  switch (which) {
    case Bell::PhiPlus:
      psi(0) = r; psi(3) = r;
      break;
    case Bell::PhiMinus:
      psi(0) = r; psi(3) = -r;
      break;
    case Bell::PsiPlus:
      psi(1) = r; psi(2) = r;
      break;
    case Bell::PsiMinus:
      psi(1) = r; psi(2) = -r;
      break;
  }
  return from_vector(std::move(psi));
}

QuantumState pure_state(const ComplexVector& amplitudes, bool normalize) {
  qubit_count_for(amplitudes.size(), "pure_state");
  const double norm = amplitudes.norm();
  if (norm < 1e-14) {
    throw std::invalid_argument("pure_state: zero amplitude vector");
  }
  if (!normalize && std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "pure_state: vector norm " + std::to_string(norm) +
        " differs from 1 beyond 1e-12; pass normalize=true to rescale");
  }
  ComplexVector psi = amplitudes;
  if (std::abs(norm - 1.0) > 1e-12) psi /= norm;
  return from_vector(std::move(psi));
}

QuantumState mixed_state(
    const std::vector<std::pair<double, ComplexVector>>& components) {
  if (components.empty()) {
    throw std::invalid_argument("mixed_state: empty component list");
  }
  const Eigen::Index dim = components.front().second.size();
  qubit_count_for(dim, "mixed_state");
  double weight_sum = 0.0;
  for (const auto& [w, psi] : components) {
    if (w < -1e-12) {
      throw std::invalid_argument("mixed_state: negative weight " +
                                  std::to_string(w));
    }
    if (psi.size() != dim) {
      throw std::invalid_argument("mixed_state: component dimension " +
                                  std::to_string(psi.size()) +
                                  " does not match " + std::to_string(dim));
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "mixed_state: component vector has norm " + std::to_string(psi.norm()) +
          ", expected 1 within 1e-12");
    }
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("mixed_state: weights sum to " +
                                std::to_string(weight_sum) +
                                ", expected 1 within 1e-12");
  }

  QuantumState s;
  s.n_qubits = qubit_count_for(dim, "mixed_state");
  s.rho = ComplexMatrix::Zero(dim, dim);
  for (const auto& [w, psi] : components) {
    s.rho += std::max(w, 0.0) * (psi * psi.adjoint());
  }
  s.real_flag = rho_is_real(s.rho);
  if (components.size() == 1) s.pure_vector = components.front().second;
  return s;
}

QuantumState purify(const QuantumState& state) {
  const Eigen::Index dim = state.dim();
  const linalg::HermitianEig eig = linalg::hermitian_eig(state.rho);
  ComplexVector psi = ComplexVector::Zero(dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double p = eig.eigenvalues(i);
    if (p < -kPsdTol) {
      throw std::invalid_argument(
          "purify: density matrix has negative eigenvalue " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    if (p == 0.0) continue;
    const double root = std::sqrt(p);
    // system index a is the high part, ancilla index i the low part
    for (Eigen::Index a = 0; a < dim; ++a) {
      psi(a * dim + i) += root * eig.eigenvectors(a, i);
    }
  }
  psi /= psi.norm();

  QuantumState out;
  out.n_qubits = 2 * state.n_qubits;
  out.rho = psi * psi.adjoint();
  out.real_flag = rho_is_real(out.rho);
  out.pure_vector = std::move(psi);
  return out;
}

ComplexMatrix partial_trace(const QuantumState& state,
                            const std::vector<int>& keep) {
  const int n = state.n_qubits;
  if (keep.empty() || static_cast<int>(keep.size()) >= n + 1) {
    throw std::invalid_argument("partial_trace: keep set must name between 1 and " +
                                std::to_string(n) + " qubits");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n) {
      throw std::invalid_argument("partial_trace: qubit index " +
                                  std::to_string(keep[k]) + " out of range [0, " +
                                  std::to_string(n) + ")");
    }
    if (k > 0 && keep[k] <= keep[k - 1]) {
      throw std::invalid_argument(
          "partial_trace: keep indices must be strictly ascending");
    }
  }

  const int n_keep = static_cast<int>(keep.size());
  const int n_trace = n - n_keep;
  std::vector<int> traced;
  traced.reserve(n_trace);
  for (int q = 0, k = 0; q < n; ++q) {
    if (k < n_keep && keep[k] == q) {
      ++k;
    } else {
      traced.push_back(q);
    }
  }

  // qubit q contributes bit (n-1-q) of the register index
  auto compose = [&](Eigen::Index kept_bits, Eigen::Index traced_bits) {
    Eigen::Index idx = 0;
    for (int k = 0; k < n_keep; ++k) {
      const Eigen::Index bit = (kept_bits >> (n_keep - 1 - k)) & 1;
      idx |= bit << (n - 1 - keep[k]);
    }
    for (int k = 0; k < n_trace; ++k) {
      const Eigen::Index bit = (traced_bits >> (n_trace - 1 - k)) & 1;
      idx |= bit << (n - 1 - traced[k]);
    }
    return idx;
  };

  const Eigen::Index dim_keep = Eigen::Index{1} << n_keep;
  const Eigen::Index dim_trace = Eigen::Index{1} << n_trace;
  ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index r = 0; r < dim_keep; ++r) {
    for (Eigen::Index c = 0; c < dim_keep; ++c) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index e = 0; e < dim_trace; ++e) {
        acc += state.rho(compose(r, e), compose(c, e));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace qsc::states
