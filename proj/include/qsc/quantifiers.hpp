#pragma once

#include <functional>
#include <vector>

#include "qsc/evolution.hpp"
#include "qsc/operators.hpp"
#include "qsc/states.hpp"

namespace qsc::quant {

// Re Z >= -kBranchTol marks the regime where the fidelity-derived OTOC
// expression equals the direct commutator OTOC.
inline constexpr double kBranchTol = 1e-12;

// Tolerance for the M-template classification.
inline constexpr double kTemplateTol = 1e-10;

struct QuantifierSample {
  double t = 0.0;
  linalg::Complex z;             // Tr[W(t) V W(t) V rho]
  double c_direct = 0.0;         // <[W(t),V]^† [W(t),V]>
  double c_fidelity_branch = 0.0;  // 2[1 - sqrt(f - Im{z}^2)]
  double fidelity = 0.0;         // |<y|x>|^2
  double bures = 0.0;            // sqrt(2(1 - sqrt(f)))
  double concurrence_trace = 0.0;    // |z|
  double concurrence_spinflip = 0.0;  // NaN unless two-qubit pure input
  double signed_trace_cos = 0.0;     // Re z, kept for closed-form comparison
  bool branch_valid = false;
};

struct MStructureReport {
  bool matches_template = false;
  double residual = 0.0;  // max-norm violation of the template constraints
  linalg::Complex trace_m;
  linalg::Complex trace_flip_m;  // Tr[(sigma_y (x) sigma_y) M]
};

linalg::ComplexMatrix compute_m(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

linalg::Complex compute_z(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

// Same trace evaluated as <Psi|(W(t) V W(t) V (x) I)|Psi> on a purification.
linalg::Complex compute_z_via_purification(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

double otoc_direct(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

// 2[1 - sqrt(f - im_z^2)]; f - im_z^2 within [-1e-12, 0) clamps to 0,
// further below is a domain error.
double otoc_fidelity_branch(double fidelity, double im_z);

// |<y|x>|^2 with |x> = W(t)V|psi>, |y> = V W(t)|psi>; mixed states run on
// the purification with operators extended as (op (x) I).
double uhlmann_fidelity(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

double bures_metric(double fidelity);

// |<psi| sigma_y (x) sigma_y |psi*>| for a two-qubit pure state.
double concurrence_spinflip(const states::QuantumState& state);

// |Z|. Requires real_flag; the trace form reads as a concurrence only when
// rho* == rho.
double concurrence_trace(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

MStructureReport check_m_structure(const linalg::ComplexMatrix& m,
                                   double tol = kTemplateTol);

// Crossings of curve_c and curve_cr on a uniform ascending grid, refined by
// bisection to |dt| <= 1e-9. `difference` re-evaluates c(t) - cr(t)
// analytically; when absent, refinement bisects the interpolated samples.
std::vector<double> balancing_points(
    const std::vector<double>& t_grid, const std::vector<double>& curve_c,
    const std::vector<double>& curve_cr,
    const std::function<double(double)>& difference = {});

// One full record; shares a single evolution of the pair across quantities.
QuantifierSample evaluate_sample(
    const ops::OperatorPair& pair, const linalg::ComplexMatrix& h, double t,
    const states::QuantumState& state,
    const evolution::EvolutionMethod& method = evolution::EvolutionMethod::exact());

}  // namespace qsc::quant
