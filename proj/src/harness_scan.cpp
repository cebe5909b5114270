#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsc/harness.hpp"

namespace qsc::harness {

using states::QuantumState;

namespace {

struct PairSpec {
  ops::Pauli axis;
  int qubit_1based = 0;  // 0 = unspecified
};

PairSpec parse_pair_spec(const std::string& text, const char* field) {
  if (text.empty()) {
    throw ConfigError(std::string(field) + ": empty operator spec");
  }
  PairSpec spec;
  const char axis = static_cast<char>(std::tolower(text[0]));
  try {
    spec.axis = ops::pauli_from_char(axis);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string(field) + ": unknown axis '" + text[0] +
                      "' in spec \"" + text + "\" (use x, y or z)");
  }
  if (spec.axis == ops::Pauli::I) {
    throw ConfigError(std::string(field) +
                      ": identity is not a valid probe axis in \"" + text + "\"");
  }
  if (text.size() > 1) {
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ConfigError(std::string(field) + ": malformed spec \"" + text +
                          "\" (expected axis plus optional 1-based qubit)");
      }
    }
    spec.qubit_1based = std::stoi(text.substr(1));
    if (spec.qubit_1based < 1) {
      throw ConfigError(std::string(field) + ": qubit index in \"" + text +
                        "\" must be >= 1");
    }
  }
  return spec;
}

linalg::ComplexVector amplitudes_from_json(const std::string& text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("state: invalid JSON amplitude list: ") +
                      e.what());
  }
  if (!parsed.is_array() || parsed.empty()) {
    throw ConfigError("state: JSON amplitude spec must be a non-empty array");
  }
  linalg::ComplexVector amps(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const auto& entry = parsed[i];
    if (entry.is_number()) {
      amps(static_cast<Eigen::Index>(i)) =
          linalg::Complex(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2 &&
               entry[0].is_number() && entry[1].is_number()) {
      amps(static_cast<Eigen::Index>(i)) =
          linalg::Complex(entry[0].get<double>(), entry[1].get<double>());
    } else {
      throw ConfigError("state: amplitude " + std::to_string(i) +
                        " must be a number or an [re, im] pair");
    }
  }
  return amps;
}

QuantumState parse_state(const std::string& spec, bool normalize) {
  if (spec == "phi+") return states::bell_state(states::Bell::PhiPlus);
  if (spec == "phi-") return states::bell_state(states::Bell::PhiMinus);
  if (spec == "psi+") return states::bell_state(states::Bell::PsiPlus);
  if (spec == "psi-") return states::bell_state(states::Bell::PsiMinus);
  if (spec.rfind("basis:", 0) == 0) {
    const std::string bits = spec.substr(6);
    if (bits.empty() || bits.size() > 10) {
      throw ConfigError("state: basis spec needs 1..10 bits, got \"" + spec +
                        "\"");
    }
    Eigen::Index index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw ConfigError("state: basis spec \"" + spec +
                          "\" may contain only 0/1");
      }
      index = (index << 1) | (c == '1' ? 1 : 0);
    }
    linalg::ComplexVector amps =
        linalg::ComplexVector::Zero(Eigen::Index{1} << bits.size());
    amps(index) = 1.0;
    return states::pure_state(amps);
  }
  if (!spec.empty() && spec.front() == '[') {
    try {
      return states::pure_state(amplitudes_from_json(spec), normalize);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("state: ") + e.what());
    }
  }
  throw ConfigError("state: unknown spec \"" + spec +
                    "\" (expected phi+/phi-/psi+/psi-, basis:<bits>, or a "
                    "JSON amplitude list)");
}

evolution::EvolutionMethod parse_method(const std::string& spec) {
  if (spec == "exact") return evolution::EvolutionMethod::exact();
  if (spec.rfind("bch:", 0) == 0) {
    const std::string digits = spec.substr(4);
    if (digits.empty()) {
      throw ConfigError("method: bch needs an order, e.g. bch:12");
    }
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ConfigError("method: malformed order in \"" + spec + "\"");
      }
    }
    return evolution::EvolutionMethod::bch(std::stoi(digits));
  }
  throw ConfigError("method: unknown value \"" + spec +
                    "\" (expected exact or bch:N)");
}

}  // namespace

ResolvedScan resolve_scan(const ScanConfig& config) {
  ResolvedScan resolved;
  resolved.state = parse_state(config.state, config.normalize_state);

  const PairSpec w_spec = parse_pair_spec(config.w, "w");
  const PairSpec v_spec = parse_pair_spec(config.v, "v");
  if (w_spec.qubit_1based && v_spec.qubit_1based &&
      w_spec.qubit_1based != v_spec.qubit_1based) {
    throw ConfigError("w/v: operator specs name different qubits (" +
                      std::to_string(w_spec.qubit_1based) + " vs " +
                      std::to_string(v_spec.qubit_1based) +
                      "); the pair acts on a single qubit");
  }
  int qubit_1based = w_spec.qubit_1based ? w_spec.qubit_1based
                                         : v_spec.qubit_1based;
  if (config.qubit) {
    if (qubit_1based && qubit_1based != config.qubit) {
      throw ConfigError("qubit: flag value " + std::to_string(config.qubit) +
                        " conflicts with the operator specs (qubit " +
                        std::to_string(qubit_1based) + ")");
    }
    if (config.qubit < 1) {
      throw ConfigError("qubit: must be >= 1 (1-based)");
    }
    qubit_1based = config.qubit;
  }
  if (!qubit_1based) qubit_1based = 1;
  if (qubit_1based > resolved.state.n_qubits) {
    throw ConfigError("qubit: index " + std::to_string(qubit_1based) +
                      " exceeds the state's " +
                      std::to_string(resolved.state.n_qubits) + " qubits");
  }
  resolved.pair = ops::make_pair(w_spec.axis, v_spec.axis, qubit_1based - 1,
                                 resolved.state.n_qubits);

  if (config.coupling_multiplier != 1 && config.coupling_multiplier != 2) {
    throw ConfigError("coupling-multiplier: must be 1 or 2");
  }
  if (config.field_multiplier != 1 && config.field_multiplier != 2) {
    throw ConfigError("field-multiplier: must be 1 or 2");
  }
  resolved.params = {config.jz, config.b, config.coupling_multiplier,
                     config.field_multiplier};

  resolved.method = parse_method(config.method);

  if (!(config.t_max > config.t_min)) {
    throw ConfigError("t-max: must exceed t-min (" +
                      std::to_string(config.t_max) + " vs " +
                      std::to_string(config.t_min) + ")");
  }
  if (config.steps < 2) {
    throw ConfigError("steps: must be >= 2, got " +
                      std::to_string(config.steps));
  }
  resolved.t_grid.resize(config.steps);
  const double dt = (config.t_max - config.t_min) / (config.steps - 1);
  for (int i = 0; i < config.steps; ++i) {
    resolved.t_grid[i] = config.t_min + i * dt;
  }
  return resolved;
}

std::vector<quant::QuantifierSample> run_scan(const ScanConfig& config) {
  const ResolvedScan resolved = resolve_scan(config);
  const linalg::ComplexMatrix h = evolution::ising_hamiltonian(resolved.params);

  std::vector<quant::QuantifierSample> samples;
  samples.reserve(resolved.t_grid.size());
  for (double t : resolved.t_grid) {
    samples.push_back(quant::evaluate_sample(resolved.pair, h, t,
                                             resolved.state, resolved.method));
  }
  return samples;
}

BalanceResult find_balancing_points(const ScanConfig& config) {
  const ResolvedScan resolved = resolve_scan(config);
  const linalg::ComplexMatrix h = evolution::ising_hamiltonian(resolved.params);

  std::vector<double> curve_c(resolved.t_grid.size());
  std::vector<double> curve_cr(resolved.t_grid.size());
  for (std::size_t i = 0; i < resolved.t_grid.size(); ++i) {
    const quant::QuantifierSample s = quant::evaluate_sample(
        resolved.pair, h, resolved.t_grid[i], resolved.state, resolved.method);
    curve_c[i] = s.c_direct;
    curve_cr[i] = s.concurrence_trace;
  }

  auto difference = [&](double t) {
    const quant::QuantifierSample s = quant::evaluate_sample(
        resolved.pair, h, t, resolved.state, resolved.method);
    return s.c_direct - s.concurrence_trace;
  };

  BalanceResult result;
  result.points = quant::balancing_points(resolved.t_grid, curve_c, curve_cr,
                                          difference);
  if (result.points.size() > 1) {
    result.gaps.resize(result.points.size() - 1);
    for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
      result.gaps[i] = result.points[i + 1] - result.points[i];
    }
  }
  return result;
}

}  // namespace qsc::harness
