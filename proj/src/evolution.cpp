#include "qsc/evolution.hpp"

#include <stdexcept>
#include <string>

#include "qsc/operators.hpp"

namespace qsc::evolution {

using linalg::Complex;
using linalg::ComplexMatrix;

EvolutionMethod EvolutionMethod::bch(int order) {
  if (order < 0) {
    throw std::invalid_argument("EvolutionMethod::bch: order " +
                                std::to_string(order) + " is negative");
  }
  EvolutionMethod m;
  m.kind = Kind::Bch;
  m.bch_order = order;
  return m;
}

ComplexMatrix ising_hamiltonian(const IsingParams& params) {
  if ((params.coupling_multiplier != 1 && params.coupling_multiplier != 2) ||
      (params.field_multiplier != 1 && params.field_multiplier != 2)) {
    throw std::invalid_argument(
        "ising_hamiltonian: convention multipliers must be 1 or 2");
  }
  const ComplexMatrix zz =
      linalg::kron(ops::pauli(ops::Pauli::Z), ops::pauli(ops::Pauli::Z));
  const ComplexMatrix z0 = ops::embed_on_qubit(ops::Pauli::Z, 0, 2);
  const ComplexMatrix z1 = ops::embed_on_qubit(ops::Pauli::Z, 1, 2);
  return -(params.coupling_multiplier * params.jz) * zz -
         (params.field_multiplier * params.b) * (z0 + z1);
}

namespace {

ComplexMatrix evolve_exact(const ComplexMatrix& w0, const ComplexMatrix& h,
                           double t) {
  const ComplexMatrix u = linalg::expm_i_hermitian(h, t);
  return linalg::matmul(linalg::matmul(u, w0), linalg::dagger(u));
}

ComplexMatrix evolve_bch(const ComplexMatrix& w0, const ComplexMatrix& h,
                         double t, int order) {
  ComplexMatrix sum = w0;
  ComplexMatrix nested = w0;  // K_m = [H, ·]^m applied to W0
  Complex coeff{1.0, 0.0};    // (it)^m / m!
  for (int m = 1; m <= order; ++m) {
    nested = linalg::matmul(h, nested) - linalg::matmul(nested, h);
    coeff *= Complex(0.0, t) / static_cast<double>(m);
    sum += coeff * nested;
  }
  return sum;
}

}  // namespace

ComplexMatrix heisenberg_evolve(const ComplexMatrix& w0,
                                const ComplexMatrix& h, double t,
                                const EvolutionMethod& method) {
  if (w0.rows() != h.rows() || w0.cols() != h.cols()) {
    throw std::invalid_argument(
        "heisenberg_evolve: operator is " + std::to_string(w0.rows()) + "x" +
        std::to_string(w0.cols()) + " but Hamiltonian is " +
        std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  const double defect = linalg::hermiticity_defect(h);
  if (defect > linalg::kCertTol) {
    throw std::invalid_argument(
        "heisenberg_evolve: Hamiltonian is not Hermitian, max asymmetry " +
        std::to_string(defect));
  }
  if (method.kind == EvolutionMethod::Kind::Exact) {
    return evolve_exact(w0, h, t);
  }
  return evolve_bch(w0, h, t, method.bch_order);
}

std::vector<std::pair<int, double>> bch_convergence_report(
    const ComplexMatrix& w0, const ComplexMatrix& h, double t, int max_order) {
  if (max_order < 0) {
    throw std::invalid_argument("bch_convergence_report: max_order " +
                                std::to_string(max_order) + " is negative");
  }
  const ComplexMatrix exact = heisenberg_evolve(w0, h, t);

  std::vector<std::pair<int, double>> report;
  report.reserve(static_cast<std::size_t>(max_order) + 1);
  ComplexMatrix sum = w0;
  ComplexMatrix nested = w0;
  Complex coeff{1.0, 0.0};
  report.emplace_back(0, linalg::max_abs_diff(sum, exact));
  for (int m = 1; m <= max_order; ++m) {
    nested = linalg::matmul(h, nested) - linalg::matmul(nested, h);
    coeff *= Complex(0.0, t) / static_cast<double>(m);
    sum += coeff * nested;
    report.emplace_back(m, linalg::max_abs_diff(sum, exact));
  }
  return report;
}

}  // namespace qsc::evolution
