#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsc/quantifiers.hpp"

namespace qsc::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CLI/JSON-facing scan description. State specs: "phi+", "phi-", "psi+",
// "psi-", "basis:<bits>", or a JSON amplitude list. Pair specs: axis with
// optional 1-based qubit ("x1"); a bare axis takes the qubit field.
struct ScanConfig {
  std::string state = "phi+";
  std::string w = "x1";
  std::string v = "x1";
  int qubit = 0;  // 1-based; 0 = unset (labels or default 1 decide)
  double jz = 0.0;
  double b = 0.5;
  int coupling_multiplier = 1;
  int field_multiplier = 1;
  std::string method = "exact";  // "exact" | "bch:N"
  double t_min = 0.0;
  double t_max = 10.0;
  int steps = 1000;
  std::string out;
  std::uint64_t seed = 1;
  bool normalize_state = false;
};

struct ResolvedScan {
  states::QuantumState state;
  ops::OperatorPair pair;
  evolution::IsingParams params;
  evolution::EvolutionMethod method;
  std::vector<double> t_grid;
};

// Validates and materializes a config; throws ConfigError naming the field.
ResolvedScan resolve_scan(const ScanConfig& config);

std::vector<quant::QuantifierSample> run_scan(const ScanConfig& config);

inline constexpr const char* kCsvHeader =
    "t,re_z,im_z,otoc_direct,otoc_fidelity_branch,fidelity,bures,"
    "concurrence_trace,concurrence_spinflip,signed_trace_cos,branch_valid";

std::string to_csv(const std::vector<quant::QuantifierSample>& samples);
std::vector<quant::QuantifierSample> parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path,
               const std::vector<quant::QuantifierSample>& samples);
std::vector<quant::QuantifierSample> read_csv(const std::filesystem::path& path);

// Small companion plot script for a written CSV.
void write_gnuplot_script(const std::filesystem::path& script_path,
                          const std::filesystem::path& csv_path);

struct FrequencyFit {
  bool is_periodic = false;
  double fundamental_omega = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
};

// Least-squares fit of A*cos(omega*t) + c, seeded by the dominant discrete
// spectral peak; periodicity decided by autocorrelation at multiples of the
// fitted period. Requires a uniform grid of >= 64 points.
FrequencyFit fit_frequency(const std::vector<double>& t,
                           const std::vector<double>& values);

struct IdentityCheck {
  std::string name;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  bool pass = false;
};

struct IdentitySuiteResult {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<IdentityCheck> checks;
  bool pass = false;
};

// Randomized cross-checks of the quantifier identity chain over Bell and
// random real pure states, all six axis pairs, jz,b in [-2,2], t in [0,5].
// inject_z_fault is a test hook: it perturbs every computed trace by 1e-3,
// which must make the suite fail (detector sanity).
IdentitySuiteResult run_identity_suite(std::uint64_t seed, int samples,
                                       bool inject_z_fault = false);

// ---- closed-form comparison report ----

struct ReportConfig {
  double jz = 0.5;
  double b = 0.5;
  double t_min = 0.0;
  double t_max = 10.0;
  int steps = 401;
  std::string method = "exact";
};

// Deviations of one (state, pair) case under one convention-multiplier
// combination from the closed-form reference curves. Oscillating family
// (x/x, x/y, y/y): C = 2(1-cos(4t(b+jz))), f = cos^2, D = sqrt(2(1-cos)),
// Cr = cos (signed). Commuting-family reference constants: {0, 1, 0, 1}.
struct ConventionCell {
  int coupling_multiplier = 1;
  int field_multiplier = 1;
  double dev_otoc_direct = 0.0;         // vs reference curve, all points
  double dev_otoc_direct_branch = 0.0;  // same, branch-valid points only
  double dev_otoc_fidelity_branch = 0.0;
  double dev_fidelity = 0.0;
  double dev_bures = 0.0;
  double dev_concurrence_abs = 0.0;  // |z| vs |reference cos|
  double dev_signed_cos = 0.0;       // Re z vs signed reference cos
  double t0_otoc_direct = 0.0;
  double t0_otoc_fidelity_branch = 0.0;
  bool fidelity_matches = false;          // dev <= 1e-10
  bool concurrence_abs_matches = false;   // dev <= 1e-10
  bool otoc_branch_matches = false;       // dev <= 1e-10
};

struct CaseReport {
  std::string state;  // "phi+", ...
  std::string pair;   // "x1/z1", ...
  bool oscillating_family = false;
  std::vector<ConventionCell> cells;
};

struct ClosedFormReport {
  ReportConfig config;
  std::vector<CaseReport> cases;
};

// Full matrix: six axis pairs x four Bell states x four convention
// combinations. Records deviations only; no verdict on intent.
ClosedFormReport closed_form_report(const ReportConfig& config);

std::string report_to_json(const ClosedFormReport& report);
std::string report_to_text(const ClosedFormReport& report);

struct BalanceResult {
  std::vector<double> points;
  std::vector<double> gaps;
};

// Crossings of c_direct(t) and concurrence_trace(t) for a scan config,
// refined against analytic re-evaluation.
BalanceResult find_balancing_points(const ScanConfig& config);

}  // namespace qsc::harness
