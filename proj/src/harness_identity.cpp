#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qsc/harness.hpp"

namespace qsc::harness {

using states::QuantumState;

namespace {

struct SplitMix {
  std::uint64_t state;

  explicit SplitMix(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// independent stream per (seed, index) so evaluation order cannot matter
SplitMix stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix mixer(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  mixer.next();
  return mixer;
}

QuantumState random_real_pure_state(SplitMix& rng) {
  linalg::ComplexVector amps(4);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < 4; ++i) {
      amps(i) = linalg::Complex(rng.uniform(-1.0, 1.0), 0.0);
    }
    norm2 = amps.squaredNorm();
  } while (norm2 < 1e-3);
  return states::pure_state(amps, /*normalize=*/true);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

IdentitySuiteResult run_identity_suite(std::uint64_t seed, int samples,
                                       bool inject_z_fault) {
  if (samples < 1) {
    throw ConfigError("run_identity_suite: sample count must be >= 1, got " +
                      std::to_string(samples));
  }

  std::vector<QuantumState> pool;
  pool.push_back(states::bell_state(states::Bell::PhiPlus));
  pool.push_back(states::bell_state(states::Bell::PhiMinus));
  pool.push_back(states::bell_state(states::Bell::PsiPlus));
  pool.push_back(states::bell_state(states::Bell::PsiMinus));
  for (std::uint64_t k = 0; k < 20; ++k) {
    SplitMix rng = stream_for(seed, 1'000'003ull + k);
    pool.push_back(random_real_pure_state(rng));
  }

  const std::array<std::pair<ops::Pauli, ops::Pauli>, 6> axis_pairs = {{
      {ops::Pauli::X, ops::Pauli::X},
      {ops::Pauli::X, ops::Pauli::Y},
      {ops::Pauli::Y, ops::Pauli::Y},
      {ops::Pauli::X, ops::Pauli::Z},
      {ops::Pauli::Y, ops::Pauli::Z},
      {ops::Pauli::Z, ops::Pauli::Z},
  }};
  std::vector<ops::OperatorPair> pairs;
  pairs.reserve(axis_pairs.size());
  for (const auto& [wa, va] : axis_pairs) {
    pairs.push_back(ops::make_pair(wa, va, 0, 2));
  }

  IdentitySuiteResult result;
  result.seed = seed;
  result.samples = samples;
  result.checks = {
      {"fidelity equals |Z|^2", 1e-12, 0.0, false},
      {"overlap-route fidelity equals trace-route fidelity", 1e-12, 0.0, false},
      {"bures equals sqrt(2(1-sqrt(f)))", 1e-12, 0.0, false},
      {"trace concurrence equals sqrt(f)", 1e-12, 0.0, false},
      {"direct otoc equals 2(1-Re Z)", 1e-10, 0.0, false},
      {"branch otoc equals direct otoc when Re Z >= 0", 1e-10, 0.0, false},
      {"trace concurrence recovered from branch otoc and Im Z", 1e-10, 0.0,
       false},
      {"bures-route otoc equals branch otoc", 1e-12, 0.0, false},
  };

  auto record = [&](int check, double dev) {
    result.checks[check].max_deviation =
        std::max(result.checks[check].max_deviation, dev);
  };

  for (int i = 0; i < samples; ++i) {
    SplitMix rng = stream_for(seed, static_cast<std::uint64_t>(i));
    const QuantumState& state = pool[rng.next() % pool.size()];
    const ops::OperatorPair& pair = pairs[rng.next() % pairs.size()];
    evolution::IsingParams params;
    params.jz = rng.uniform(-2.0, 2.0);
    params.b = rng.uniform(-2.0, 2.0);
    params.coupling_multiplier = 1 + static_cast<int>(rng.next() & 1);
    params.field_multiplier = 1 + static_cast<int>(rng.next() & 1);
    const double t = rng.uniform(0.0, 5.0);
    const linalg::ComplexMatrix h = evolution::ising_hamiltonian(params);

    quant::QuantifierSample s = quant::evaluate_sample(pair, h, t, state);
    double f_op = quant::uhlmann_fidelity(pair, h, t, state);
    linalg::Complex z_op = quant::compute_z(pair, h, t, state);
    if (inject_z_fault) {
      s.z += 1e-3;
      s.concurrence_trace = std::abs(s.z);
      s.signed_trace_cos = s.z.real();
      z_op += 1e-3;
    }

    const double f = clamp01(s.fidelity);
    record(0, std::abs(s.fidelity - std::norm(s.z)));
    record(1, std::abs(f_op - std::norm(z_op)));
    record(2, std::abs(s.bures - std::sqrt(2.0 * (1.0 - std::sqrt(f)))));
    record(3, std::abs(s.concurrence_trace - std::sqrt(f)));
    record(4, std::abs(s.c_direct - 2.0 * (1.0 - s.z.real())));
    if (s.branch_valid) {
      record(5, std::abs(s.c_direct - s.c_fidelity_branch));
    }
    const double im2 = s.z.imag() * s.z.imag();
    const double half = 1.0 - s.c_fidelity_branch / 2.0;
    record(6, std::abs(s.concurrence_trace - std::sqrt(half * half + im2)));
    double inner = 1.0 - s.bures * s.bures / 2.0;
    inner = inner * inner - im2;
    if (inner > -1e-12) {
      record(7, std::abs(2.0 * (1.0 - std::sqrt(std::max(inner, 0.0))) -
                         s.c_fidelity_branch));
    } else {
      record(7, std::abs(inner));  // domain breach is itself a failure
    }
  }

  result.pass = true;
  for (auto& check : result.checks) {
    check.pass = check.max_deviation <= check.tolerance;
    result.pass = result.pass && check.pass;
  }
  return result;
}

}  // namespace qsc::harness
