#pragma once

#include <utility>
#include <vector>

#include "qsc/linalg.hpp"

namespace qsc::evolution {

// H = -(coupling_multiplier*j_z) sigma_z(x)sigma_z
//     -(field_multiplier*b) (sigma_z(x)I + I(x)sigma_z), hbar = 1.
// multiplier 2 is the literal double-counted reading of the model's sum.
struct IsingParams {
  double jz = 0.0;
  double b = 0.0;
  int coupling_multiplier = 1;
  int field_multiplier = 1;
};

struct EvolutionMethod {
  enum class Kind { Exact, Bch };
  Kind kind = Kind::Exact;
  int bch_order = 0;

  static EvolutionMethod exact() { return {}; }
  static EvolutionMethod bch(int order);
};

linalg::ComplexMatrix ising_hamiltonian(const IsingParams& params);

// W(t) = e^{iht} w0 e^{-iht}, either exactly or as the BCH partial sum
// through the t^N/N! nested-commutator term.
linalg::ComplexMatrix heisenberg_evolve(
    const linalg::ComplexMatrix& w0, const linalg::ComplexMatrix& h, double t,
    const EvolutionMethod& method = EvolutionMethod::exact());

// (order, max-norm deviation of the BCH partial sum from the exact result)
// for every order 0..max_order.
std::vector<std::pair<int, double>> bch_convergence_report(
    const linalg::ComplexMatrix& w0, const linalg::ComplexMatrix& h, double t,
    int max_order);

}  // namespace qsc::evolution
