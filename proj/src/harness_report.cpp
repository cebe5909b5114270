#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsc/harness.hpp"

namespace qsc::harness {

namespace {

constexpr double kMatchTol = 1e-10;

const std::array<const char*, 4> kBellNames = {"phi+", "phi-", "psi+", "psi-"};

struct PairCase {
  const char* w;
  const char* v;
  bool oscillating;
};

const std::array<PairCase, 6> kPairCases = {{
    {"x1", "x1", true},
    {"x1", "y1", true},
    {"y1", "y1", true},
    {"x1", "z1", false},
    {"y1", "z1", false},
    {"z1", "z1", false},
}};

ScanConfig cell_config(const ReportConfig& config, const char* state,
                       const PairCase& pair, int cm, int fm) {
  ScanConfig scan;
  scan.state = state;
  scan.w = pair.w;
  scan.v = pair.v;
  scan.jz = config.jz;
  scan.b = config.b;
  scan.coupling_multiplier = cm;
  scan.field_multiplier = fm;
  scan.method = config.method;
  scan.t_min = config.t_min;
  scan.t_max = config.t_max;
  scan.steps = config.steps;
  return scan;
}

ConventionCell evaluate_cell(const ReportConfig& config, const char* state,
                             const PairCase& pair, int cm, int fm) {
  const ScanConfig scan = cell_config(config, state, pair, cm, fm);
  const std::vector<quant::QuantifierSample> samples = run_scan(scan);

  ConventionCell cell;
  cell.coupling_multiplier = cm;
  cell.field_multiplier = fm;
  for (const auto& s : samples) {
    double ref_c, ref_f, ref_d, ref_signed, ref_abs;
    if (pair.oscillating) {
      const double c = std::cos(4.0 * s.t * (config.b + config.jz));
      ref_c = 2.0 * (1.0 - c);
      ref_f = c * c;
      ref_d = std::sqrt(2.0 * std::max(1.0 - c, 0.0));
      ref_signed = c;
      ref_abs = std::abs(c);
    } else {
      ref_c = 0.0;
      ref_f = 1.0;
      ref_d = 0.0;
      ref_signed = 1.0;
      ref_abs = 1.0;
    }
    cell.dev_otoc_direct =
        std::max(cell.dev_otoc_direct, std::abs(s.c_direct - ref_c));
    if (s.branch_valid) {
      cell.dev_otoc_direct_branch =
          std::max(cell.dev_otoc_direct_branch, std::abs(s.c_direct - ref_c));
    }
    cell.dev_otoc_fidelity_branch = std::max(
        cell.dev_otoc_fidelity_branch, std::abs(s.c_fidelity_branch - ref_c));
    cell.dev_fidelity =
        std::max(cell.dev_fidelity, std::abs(s.fidelity - ref_f));
    cell.dev_bures = std::max(cell.dev_bures, std::abs(s.bures - ref_d));
    cell.dev_concurrence_abs = std::max(
        cell.dev_concurrence_abs, std::abs(s.concurrence_trace - ref_abs));
    cell.dev_signed_cos = std::max(cell.dev_signed_cos,
                                   std::abs(s.signed_trace_cos - ref_signed));
  }

  ScanConfig origin = scan;
  origin.t_min = 0.0;
  origin.t_max = 1.0;
  origin.steps = 2;
  const quant::QuantifierSample at_zero = run_scan(origin).front();
  cell.t0_otoc_direct = at_zero.c_direct;
  cell.t0_otoc_fidelity_branch = at_zero.c_fidelity_branch;

  cell.fidelity_matches = cell.dev_fidelity <= kMatchTol;
  cell.concurrence_abs_matches = cell.dev_concurrence_abs <= kMatchTol;
  cell.otoc_branch_matches = cell.dev_otoc_fidelity_branch <= kMatchTol;
  return cell;
}

nlohmann::json cell_to_json(const ConventionCell& cell) {
  return nlohmann::json{
      {"coupling_multiplier", cell.coupling_multiplier},
      {"field_multiplier", cell.field_multiplier},
      {"deviations",
       {{"otoc_direct", cell.dev_otoc_direct},
        {"otoc_direct_branch_valid_only", cell.dev_otoc_direct_branch},
        {"otoc_fidelity_branch", cell.dev_otoc_fidelity_branch},
        {"fidelity", cell.dev_fidelity},
        {"bures", cell.dev_bures},
        {"concurrence_abs", cell.dev_concurrence_abs},
        {"signed_cos", cell.dev_signed_cos}}},
      {"t0", {{"otoc_direct", cell.t0_otoc_direct},
              {"otoc_fidelity_branch", cell.t0_otoc_fidelity_branch}}},
      {"matches",
       {{"fidelity", cell.fidelity_matches},
        {"concurrence_abs", cell.concurrence_abs_matches},
        {"otoc_fidelity_branch", cell.otoc_branch_matches}}}};
}

std::string short_float(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

ClosedFormReport closed_form_report(const ReportConfig& config) {
  ClosedFormReport report;
  report.config = config;
  for (const char* state : kBellNames) {
    for (const PairCase& pair : kPairCases) {
      CaseReport case_report;
      case_report.state = state;
      case_report.pair = std::string(pair.w) + "/" + pair.v;
      case_report.oscillating_family = pair.oscillating;
      for (int cm : {1, 2}) {
        for (int fm : {1, 2}) {
          case_report.cells.push_back(
              evaluate_cell(config, state, pair, cm, fm));
        }
      }
      report.cases.push_back(std::move(case_report));
    }
  }
  return report;
}

std::string report_to_json(const ClosedFormReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : c.cells) {
      cells.push_back(cell_to_json(cell));
    }
    cases.push_back({{"state", c.state},
                     {"pair", c.pair},
                     {"reference", c.oscillating_family
                                       ? "2(1-cos(4t(b+jz))) family"
                                       : "constants {0,1,0,1}"},
                     {"cells", cells}});
  }
  nlohmann::json root = {
      {"config",
       {{"jz", report.config.jz},
        {"b", report.config.b},
        {"t_min", report.config.t_min},
        {"t_max", report.config.t_max},
        {"steps", report.config.steps},
        {"method", report.config.method}}},
      {"cases", cases}};
  return root.dump(2) + "\n";
}

std::string report_to_text(const ClosedFormReport& report) {
  std::string out;
  out += "closed-form comparison (jz=" + short_float(report.config.jz) +
         ", b=" + short_float(report.config.b) + ", t in [" +
         short_float(report.config.t_min) + ", " +
         short_float(report.config.t_max) + "], " +
         std::to_string(report.config.steps) + " steps, method " +
         report.config.method + ")\n";
  out += "deviation columns: direct / direct(branch-valid) / branch / f / D "
         "/ |Cr| / signed\n";
  for (const auto& c : report.cases) {
    out += c.state + " " + c.pair +
           (c.oscillating_family ? "  [oscillating reference]\n"
                                 : "  [constant reference {0,1,0,1}]\n");
    for (const auto& cell : c.cells) {
      out += "  cm=" + std::to_string(cell.coupling_multiplier) +
             " fm=" + std::to_string(cell.field_multiplier) + "  " +
             short_float(cell.dev_otoc_direct) + " / " +
             short_float(cell.dev_otoc_direct_branch) + " / " +
             short_float(cell.dev_otoc_fidelity_branch) + " / " +
             short_float(cell.dev_fidelity) + " / " +
             short_float(cell.dev_bures) + " / " +
             short_float(cell.dev_concurrence_abs) + " / " +
             short_float(cell.dev_signed_cos) + "  t0: " +
             short_float(cell.t0_otoc_direct) + " vs " +
             short_float(cell.t0_otoc_fidelity_branch) + "\n";
    }
  }
  return out;
}

}  // namespace qsc::harness
