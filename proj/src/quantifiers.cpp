#include "qsc/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qsc::quant {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using states::QuantumState;

namespace {

constexpr double kBisectWidth = 1e-9;

void require_certified(const ops::OperatorPair& pair, const char* who) {
  if (!pair.certified) {
    throw std::invalid_argument(
        std::string(who) +
        ": operator pair is not certified; build it with make_pair or "
        "make_custom_pair");
  }
}

ComplexMatrix evolved_w(const ops::OperatorPair& pair, const ComplexMatrix& h,
                        double t, const evolution::EvolutionMethod& method) {
  return evolution::heisenberg_evolve(pair.w0, h, t, method);
}

ComplexMatrix m_from_w(const ComplexMatrix& w, const ComplexMatrix& v,
                       const ComplexMatrix& rho) {
  return linalg::matmul(
      linalg::matmul(linalg::matmul(linalg::matmul(w, v), w), v), rho);
}

double otoc_direct_from_w(const ComplexMatrix& w, const ComplexMatrix& v,
                          const ComplexMatrix& rho) {
  const ComplexMatrix k = linalg::matmul(w, v) - linalg::matmul(v, w);
  const ComplexMatrix c = linalg::matmul(linalg::dagger(k), k);
  const Complex value = linalg::trace(linalg::matmul(c, rho));
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error(
        "otoc_direct: expectation has imaginary residue " +
        std::to_string(value.imag()));
  }
  return value.real();
}

double overlap_fidelity_from_w(const ComplexMatrix& w, const ComplexMatrix& v,
                               const QuantumState& state) {
  ComplexVector psi;
  ComplexMatrix wv = linalg::matmul(w, v);
  ComplexMatrix vw = linalg::matmul(v, w);
  if (state.is_pure()) {
    psi = *state.pure_vector;
  } else {
    const QuantumState purified = states::purify(state);
    psi = *purified.pure_vector;
    const ComplexMatrix eye = linalg::identity(state.dim());
    wv = linalg::kron(wv, eye);
    vw = linalg::kron(vw, eye);
  }
  const ComplexVector x = wv * psi;
  const ComplexVector y = vw * psi;
  const Complex overlap = y.dot(x);  // <y|x>
  // The fidelity is between the evolved states as rays, so divide by the
  // computed norms; this also keeps f in [0,1] for truncated evolution,
  // where the raw vectors are not normalized.
  const double denom = x.squaredNorm() * y.squaredNorm();
  if (denom <= 0.0) return 0.0;
  return std::norm(overlap) / denom;
}

double spinflip_value(const ComplexVector& psi) {
  const ComplexMatrix flip = ops::spin_flip_operator();
  const Complex value = psi.dot(flip * psi.conjugate());  // <psi|YY|psi*>
  return std::min(std::abs(value), 1.0);
}

}  // namespace

ComplexMatrix compute_m(const ops::OperatorPair& pair, const ComplexMatrix& h,
                        double t, const QuantumState& state,
                        const evolution::EvolutionMethod& method) {
  if (pair.w0.rows() != state.dim()) {
    throw std::invalid_argument(
        "compute_m: operator dimension " + std::to_string(pair.w0.rows()) +
        " does not match state dimension " + std::to_string(state.dim()));
  }
  const ComplexMatrix w = evolved_w(pair, h, t, method);
  return m_from_w(w, pair.v, state.rho);
}

Complex compute_z(const ops::OperatorPair& pair, const ComplexMatrix& h,
                  double t, const QuantumState& state,
                  const evolution::EvolutionMethod& method) {
  return linalg::trace(compute_m(pair, h, t, state, method));
}

Complex compute_z_via_purification(const ops::OperatorPair& pair,
                                   const ComplexMatrix& h, double t,
                                   const QuantumState& state,
                                   const evolution::EvolutionMethod& method) {
  if (pair.w0.rows() != state.dim()) {
    throw std::invalid_argument(
        "compute_z_via_purification: operator dimension " +
        std::to_string(pair.w0.rows()) + " does not match state dimension " +
        std::to_string(state.dim()));
  }
  const QuantumState purified = states::purify(state);
  const ComplexMatrix w = evolved_w(pair, h, t, method);
  const ComplexMatrix op = linalg::matmul(
      linalg::matmul(linalg::matmul(w, pair.v), w), pair.v);
  const ComplexMatrix extended = linalg::kron(op, linalg::identity(state.dim()));
  const ComplexVector& psi = *purified.pure_vector;
  return psi.dot(extended * psi);  // <Psi|(op (x) I)|Psi>
}

double otoc_direct(const ops::OperatorPair& pair, const ComplexMatrix& h,
                   double t, const QuantumState& state,
                   const evolution::EvolutionMethod& method) {
  require_certified(pair, "otoc_direct");
  const ComplexMatrix w = evolved_w(pair, h, t, method);
  return otoc_direct_from_w(w, pair.v, state.rho);
}

double otoc_fidelity_branch(double fidelity, double im_z) {
  double arg = fidelity - im_z * im_z;
  if (arg < -kBranchTol) {
    throw std::domain_error("otoc_fidelity_branch: f - Im{Z}^2 = " +
                            std::to_string(arg) + " is below the domain");
  }
  arg = std::max(arg, 0.0);
  return 2.0 * (1.0 - std::sqrt(arg));
}

double uhlmann_fidelity(const ops::OperatorPair& pair, const ComplexMatrix& h,
                        double t, const QuantumState& state,
                        const evolution::EvolutionMethod& method) {
  if (pair.w0.rows() != state.dim()) {
    throw std::invalid_argument(
        "uhlmann_fidelity: operator dimension " + std::to_string(pair.w0.rows()) +
        " does not match state dimension " + std::to_string(state.dim()));
  }
  const ComplexMatrix w = evolved_w(pair, h, t, method);
  return overlap_fidelity_from_w(w, pair.v, state);
}

double bures_metric(double fidelity) {
  if (fidelity < -1e-12 || fidelity > 1.0 + 1e-12) {
    throw std::domain_error("bures_metric: fidelity " +
                            std::to_string(fidelity) + " outside [0, 1]");
  }
  const double f = std::clamp(fidelity, 0.0, 1.0);
  const double inner = std::max(1.0 - std::sqrt(f), 0.0);
  return std::sqrt(2.0 * inner);
}

double concurrence_spinflip(const QuantumState& state) {
  if (state.n_qubits != 2) {
    throw std::invalid_argument(
        "concurrence_spinflip: needs a two-qubit state, got " +
        std::to_string(state.n_qubits) + " qubits");
  }
  if (!state.is_pure()) {
    throw std::invalid_argument(
        "concurrence_spinflip: spin-flip form is defined here for pure "
        "states only");
  }
  return spinflip_value(*state.pure_vector);
}

double concurrence_trace(const ops::OperatorPair& pair, const ComplexMatrix& h,
                         double t, const QuantumState& state,
                         const evolution::EvolutionMethod& method) {
  if (!state.real_flag) {
    throw std::invalid_argument(
        "concurrence_trace: the trace form reads as a concurrence only for "
        "real density matrices (rho* == rho); this state has complex entries");
  }
  return std::abs(compute_z(pair, h, t, state, method));
}

MStructureReport check_m_structure(const ComplexMatrix& m, double tol) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("check_m_structure: expected a 4x4 matrix, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  double residual = 0.0;
  residual = std::max(residual, std::abs(m(0, 3) + m(0, 0)));
  residual = std::max(residual, std::abs(m(1, 1) - m(1, 2)));
  residual = std::max(residual, std::abs(m(2, 1) - m(2, 2)));
  residual = std::max(residual, std::abs(m(3, 3) + m(3, 0)));

  MStructureReport report;
  report.residual = residual;
  report.matches_template = residual <= tol;
  report.trace_m = linalg::trace(m);
  report.trace_flip_m = linalg::trace(linalg::matmul(ops::spin_flip_operator(), m));
  return report;
}

std::vector<double> balancing_points(
    const std::vector<double>& t_grid, const std::vector<double>& curve_c,
    const std::vector<double>& curve_cr,
    const std::function<double(double)>& difference) {
  if (t_grid.empty()) {
    throw std::invalid_argument("balancing_points: empty grid");
  }
  if (curve_c.size() != t_grid.size() || curve_cr.size() != t_grid.size()) {
    throw std::invalid_argument(
        "balancing_points: curves must match the grid length " +
        std::to_string(t_grid.size()));
  }

  std::vector<double> diff(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    diff[i] = curve_c[i] - curve_cr[i];
  }

  auto interp_diff = [&](std::size_t i, double t) {
    const double t0 = t_grid[i];
    const double t1 = t_grid[i + 1];
    const double u = (t - t0) / (t1 - t0);
    return diff[i] + u * (diff[i + 1] - diff[i]);
  };

  std::vector<double> points;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (diff[i] == 0.0) {
      points.push_back(t_grid[i]);
      continue;
    }
    if (diff[i] * diff[i + 1] >= 0.0) continue;
    double lo = t_grid[i];
    double hi = t_grid[i + 1];
    double f_lo = difference ? difference(lo) : diff[i];
    while (hi - lo > kBisectWidth) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = difference ? difference(mid) : interp_diff(i, mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_lo < 0.0) != (f_mid < 0.0)) {
        hi = mid;
      } else {
        lo = mid;
        f_lo = f_mid;
      }
    }
    points.push_back(0.5 * (lo + hi));
  }
  if (!t_grid.empty() && diff.back() == 0.0) {
    points.push_back(t_grid.back());
  }
  return points;
}

QuantifierSample evaluate_sample(const ops::OperatorPair& pair,
                                 const ComplexMatrix& h, double t,
                                 const QuantumState& state,
                                 const evolution::EvolutionMethod& method) {
  require_certified(pair, "evaluate_sample");
  if (pair.w0.rows() != state.dim()) {
    throw std::invalid_argument(
        "evaluate_sample: operator dimension " + std::to_string(pair.w0.rows()) +
        " does not match state dimension " + std::to_string(state.dim()));
  }
  const ComplexMatrix w = evolved_w(pair, h, t, method);
  const ComplexMatrix m = m_from_w(w, pair.v, state.rho);

  QuantifierSample s;
  s.t = t;
  s.z = linalg::trace(m);
  s.c_direct = otoc_direct_from_w(w, pair.v, state.rho);
  s.fidelity = overlap_fidelity_from_w(w, pair.v, state);
  s.c_fidelity_branch = otoc_fidelity_branch(s.fidelity, s.z.imag());
  s.bures = bures_metric(std::min(s.fidelity, 1.0));
  s.concurrence_trace = std::abs(s.z);
  s.signed_trace_cos = s.z.real();
  s.branch_valid = s.z.real() >= -kBranchTol;
  if (state.n_qubits == 2 && state.is_pure()) {
    ComplexVector chi = linalg::matmul(linalg::matmul(w, pair.v),
                                       linalg::matmul(w, pair.v)) *
                        (*state.pure_vector);
    const double norm = chi.norm();
    if (norm > 0.0) chi /= norm;
    s.concurrence_spinflip = spinflip_value(chi);
  } else {
    s.concurrence_spinflip = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace qsc::quant
