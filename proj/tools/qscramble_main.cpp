#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsc/harness.hpp"

namespace {

namespace fs = std::filesystem;
using qsc::harness::ConfigError;
using qsc::harness::IoError;
using qsc::harness::ScanConfig;

void add_scan_options(CLI::App* cmd, ScanConfig& c, std::string& config_path) {
  cmd->add_option("--config", config_path,
                  "JSON file with scan settings; explicit flags override it");
  cmd->add_option("--state", c.state,
                  "phi+/phi-/psi+/psi-, basis:<bits>, or a JSON amplitude list");
  cmd->add_option("--w", c.w, "probe operator: axis plus 1-based qubit, e.g. x1");
  cmd->add_option("--v", c.v, "second operator, same format");
  cmd->add_option("--qubit", c.qubit, "1-based qubit when the specs omit it");
  cmd->add_option("--jz", c.jz, "Ising coupling strength");
  cmd->add_option("--b", c.b, "transverse field strength");
  cmd->add_option("--coupling-multiplier", c.coupling_multiplier,
                  "coupling convention multiplier, 1 or 2");
  cmd->add_option("--field-multiplier", c.field_multiplier,
                  "field convention multiplier, 1 or 2");
  cmd->add_option("--method", c.method, "evolution method: exact or bch:N");
  cmd->add_option("--t-min", c.t_min, "scan start time");
  cmd->add_option("--t-max", c.t_max, "scan end time");
  cmd->add_option("--steps", c.steps, "grid points (>= 2)");
  cmd->add_option("--out", c.out, "CSV output path; stdout when omitted");
  cmd->add_option("--seed", c.seed, "seed for randomized suites");
  cmd->add_flag("--normalize", c.normalize_state,
                "rescale amplitude-list states to unit norm");
}

ScanConfig config_from_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw IoError("cannot open config file " + path);
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!parsed.is_object()) {
    throw ConfigError("config file " + path + ": expected a JSON object");
  }
  ScanConfig c;
  try {
    for (const auto& [key, value] : parsed.items()) {
      if (key == "state") c.state = value.get<std::string>();
      else if (key == "w") c.w = value.get<std::string>();
      else if (key == "v") c.v = value.get<std::string>();
      else if (key == "qubit") c.qubit = value.get<int>();
      else if (key == "jz") c.jz = value.get<double>();
      else if (key == "b") c.b = value.get<double>();
      else if (key == "coupling_multiplier") c.coupling_multiplier = value.get<int>();
      else if (key == "field_multiplier") c.field_multiplier = value.get<int>();
      else if (key == "method") c.method = value.get<std::string>();
      else if (key == "t_min") c.t_min = value.get<double>();
      else if (key == "t_max") c.t_max = value.get<double>();
      else if (key == "steps") c.steps = value.get<int>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "normalize_state") c.normalize_state = value.get<bool>();
      else throw ConfigError("config file " + path + ": unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return c;
}

ScanConfig merge_config(const CLI::App* cmd, const ScanConfig& cli,
                        const std::string& config_path) {
  if (config_path.empty()) return cli;
  ScanConfig base = config_from_json_file(config_path);
  if (cmd->count("--state")) base.state = cli.state;
  if (cmd->count("--w")) base.w = cli.w;
  if (cmd->count("--v")) base.v = cli.v;
  if (cmd->count("--qubit")) base.qubit = cli.qubit;
  if (cmd->count("--jz")) base.jz = cli.jz;
  if (cmd->count("--b")) base.b = cli.b;
  if (cmd->count("--coupling-multiplier"))
    base.coupling_multiplier = cli.coupling_multiplier;
  if (cmd->count("--field-multiplier"))
    base.field_multiplier = cli.field_multiplier;
  if (cmd->count("--method")) base.method = cli.method;
  if (cmd->count("--t-min")) base.t_min = cli.t_min;
  if (cmd->count("--t-max")) base.t_max = cli.t_max;
  if (cmd->count("--steps")) base.steps = cli.steps;
  if (cmd->count("--out")) base.out = cli.out;
  if (cmd->count("--seed")) base.seed = cli.seed;
  if (cmd->count("--normalize")) base.normalize_state = cli.normalize_state;
  return base;
}

struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
};

Range parse_range(const std::string& text, const char* flag) {
  Range r;
  char trailing = '\0';
  const int got = std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.min, &r.max,
                              &r.count, &trailing);
  if (got != 3) {
    throw ConfigError(std::string(flag) + ": expected min:max:count, got \"" +
                      text + "\"");
  }
  if (r.count < 1) {
    throw ConfigError(std::string(flag) + ": count must be >= 1");
  }
  if (r.count > 1 && !(r.max > r.min)) {
    throw ConfigError(std::string(flag) + ": max must exceed min for count > 1");
  }
  return r;
}

std::vector<double> range_values(const Range& r) {
  std::vector<double> values(r.count);
  if (r.count == 1) {
    values[0] = r.min;
    return values;
  }
  const double step = (r.max - r.min) / (r.count - 1);
  for (int i = 0; i < r.count; ++i) values[i] = r.min + i * step;
  return values;
}

int run_verify(std::uint64_t seed, int samples, bool inject_fault) {
  const qsc::harness::IdentitySuiteResult result =
      qsc::harness::run_identity_suite(seed, samples, inject_fault);
  for (const auto& check : result.checks) {
    std::printf("[%s] %-55s max dev %.3e  tol %.0e\n",
                check.pass ? "pass" : "FAIL", check.name.c_str(),
                check.max_deviation, check.tolerance);
  }
  std::printf("identity suite: %s (%zu checks, %d samples, seed %llu)\n",
              result.pass ? "PASS" : "FAIL", result.checks.size(),
              result.samples,
              static_cast<unsigned long long>(result.seed));
  return result.pass ? 0 : 1;
}

int run_scan_command(const ScanConfig& config, const std::string& gnuplot_path) {
  const auto samples = qsc::harness::run_scan(config);
  if (config.out.empty()) {
    if (!gnuplot_path.empty()) {
      throw ConfigError("--gnuplot requires --out (the script references the CSV)");
    }
    std::cout << qsc::harness::to_csv(samples);
    return 0;
  }
  qsc::harness::write_csv(config.out, samples);
  if (!gnuplot_path.empty()) {
    qsc::harness::write_gnuplot_script(gnuplot_path, config.out);
  }
  std::fprintf(stderr, "wrote %zu samples to %s\n", samples.size(),
               config.out.c_str());
  return 0;
}

int run_sweep(const ScanConfig& base, const std::string& jz_range,
              const std::string& b_range, const std::string& out_dir) {
  if (out_dir.empty()) {
    throw ConfigError("out-dir: sweep needs --out-dir for its CSV cells");
  }
  const std::vector<double> jz_values =
      jz_range.empty() ? std::vector<double>{base.jz}
                       : range_values(parse_range(jz_range, "jz-range"));
  const std::vector<double> b_values =
      b_range.empty() ? std::vector<double>{base.b}
                      : range_values(parse_range(b_range, "b-range"));

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }

  nlohmann::json cells = nlohmann::json::array();
  int index = 0;
  for (double jz : jz_values) {
    for (double b : b_values) {
      ScanConfig cell = base;
      cell.jz = jz;
      cell.b = b;
      char name[32];
      std::snprintf(name, sizeof(name), "cell_%04d.csv", index);
      const fs::path path = fs::path(out_dir) / name;
      qsc::harness::write_csv(path, qsc::harness::run_scan(cell));
      cells.push_back({{"jz", jz}, {"b", b}, {"file", name}});
      ++index;
    }
  }

  nlohmann::json manifest = {
      {"state", base.state},
      {"w", base.w},
      {"v", base.v},
      {"coupling_multiplier", base.coupling_multiplier},
      {"field_multiplier", base.field_multiplier},
      {"method", base.method},
      {"t_min", base.t_min},
      {"t_max", base.t_max},
      {"steps", base.steps},
      {"cells", cells}};
  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  std::ofstream file(manifest_path);
  if (!file) {
    throw IoError("cannot open " + manifest_path.string() + " for writing");
  }
  file << manifest.dump(2) << "\n";
  std::fprintf(stderr, "wrote %d cells + manifest.json to %s\n", index,
               out_dir.c_str());
  return 0;
}

int run_report(const qsc::harness::ReportConfig& config,
               const std::string& format, const std::string& out_path) {
  const qsc::harness::ClosedFormReport report =
      qsc::harness::closed_form_report(config);
  const std::string rendered = format == "text"
                                   ? qsc::harness::report_to_text(report)
                                   : qsc::harness::report_to_json(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      throw IoError("cannot open " + out_path + " for writing");
    }
    file << rendered;
  }
  return 0;
}

int run_balance(const ScanConfig& config) {
  const qsc::harness::BalanceResult result =
      qsc::harness::find_balancing_points(config);
  std::printf("balancing points: %zu\n", result.points.size());
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    std::printf("  t[%zu] = %.12g\n", i, result.points[i]);
  }
  for (std::size_t i = 0; i < result.gaps.size(); ++i) {
    std::printf("  gap[%zu] = %.12g\n", i, result.gaps[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact two-qubit scrambling simulator and verification harness"};
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the randomized identity suite (exit 1 on failure)");
  std::uint64_t verify_seed = 1;
  int verify_samples = 200;
  bool inject_fault = false;
  verify_cmd->add_option("--seed", verify_seed, "suite seed");
  verify_cmd->add_option("--samples", verify_samples, "sample count (>= 1)");
  verify_cmd->add_flag(
      "--inject-z-fault", inject_fault,
      "test hook: perturb every trace by 1e-3; the suite must then fail");

  auto* scan_cmd =
      app.add_subcommand("scan", "time scan of all quantifiers, CSV output");
  ScanConfig scan_config;
  std::string scan_config_path;
  std::string gnuplot_path;
  add_scan_options(scan_cmd, scan_config, scan_config_path);
  scan_cmd->add_option("--gnuplot", gnuplot_path,
                       "also write a gnuplot script plotting the CSV");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "grid of scans over jz/b ranges, one CSV per cell");
  ScanConfig sweep_config;
  std::string sweep_config_path;
  std::string jz_range, b_range, out_dir;
  add_scan_options(sweep_cmd, sweep_config, sweep_config_path);
  sweep_cmd->add_option("--jz-range", jz_range, "min:max:count");
  sweep_cmd->add_option("--b-range", b_range, "min:max:count");
  sweep_cmd->add_option("--out-dir", out_dir, "directory for cell CSVs and manifest");

  auto* report_cmd = app.add_subcommand(
      "report", "closed-form comparison over pairs, Bell states, conventions");
  qsc::harness::ReportConfig report_config;
  std::string report_format = "json";
  std::string report_out;
  report_cmd->add_option("--jz", report_config.jz, "Ising coupling");
  report_cmd->add_option("--b", report_config.b, "transverse field");
  report_cmd->add_option("--t-min", report_config.t_min, "grid start");
  report_cmd->add_option("--t-max", report_config.t_max, "grid end");
  report_cmd->add_option("--steps", report_config.steps, "grid points");
  report_cmd->add_option("--method", report_config.method, "exact or bch:N");
  report_cmd->add_option("--format", report_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  report_cmd->add_option("--out", report_out, "output path; stdout when omitted");

  auto* balance_cmd = app.add_subcommand(
      "balance", "balancing points of the direct OTOC and trace concurrence");
  ScanConfig balance_config;
  std::string balance_config_path;
  add_scan_options(balance_cmd, balance_config, balance_config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) {
      return run_verify(verify_seed, verify_samples, inject_fault);
    }
    if (*scan_cmd) {
      return run_scan_command(merge_config(scan_cmd, scan_config, scan_config_path),
                              gnuplot_path);
    }
    if (*sweep_cmd) {
      return run_sweep(merge_config(sweep_cmd, sweep_config, sweep_config_path),
                       jz_range, b_range, out_dir);
    }
    if (*report_cmd) {
      return run_report(report_config, report_format, report_out);
    }
    if (*balance_cmd) {
      return run_balance(
          merge_config(balance_cmd, balance_config, balance_config_path));
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
