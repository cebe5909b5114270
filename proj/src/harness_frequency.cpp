#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsc/harness.hpp"

namespace qsc::harness {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSimilarityThreshold = 0.02;

struct CosineFit {
  double a = 0.0;
  double c = 0.0;
  double sse = 0.0;
};

CosineFit fit_at_omega(const std::vector<double>& t,
                       const std::vector<double>& v, double omega) {
  const std::size_t n = t.size();
  double s1 = 0.0, s2 = 0.0, sv = 0.0, vsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::cos(omega * t[i]);
    s1 += u;
    s2 += u * u;
    sv += u * v[i];
    vsum += v[i];
  }
  const double dn = static_cast<double>(n);
  const double det = s2 * dn - s1 * s1;
  CosineFit fit;
  if (std::abs(det) < 1e-12 * dn * std::max(s2, 1.0)) {
    fit.a = 0.0;
    fit.c = vsum / dn;
  } else {
    fit.a = (sv * dn - s1 * vsum) / det;
    fit.c = (s2 * vsum - s1 * sv) / det;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v[i] - fit.a * std::cos(omega * t[i]) - fit.c;
    fit.sse += r * r;
  }
  return fit;
}

double sse_at(const std::vector<double>& t, const std::vector<double>& v,
              double omega) {
  return fit_at_omega(t, v, omega).sse;
}

// RMS mismatch between the series and itself shifted by `period`, relative
// to the series' RMS spread; shifted values read off by linear interpolation.
double shift_mismatch(const std::vector<double>& t,
                      const std::vector<double>& v, double period,
                      double dt, double rms_spread) {
  const std::size_t n = t.size();
  const double span = t.back() - t.front();
  if (period <= 0.0 || period > span / 2.0) return 1.0;
  double sse = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double shifted = t[i] + period;
    if (shifted > t.back() + 1e-12) break;
    const double pos = (shifted - t.front()) / dt;
    const auto lo = static_cast<std::size_t>(
        std::min(std::floor(pos), static_cast<double>(n - 2)));
    const double u = pos - static_cast<double>(lo);
    const double interp = v[lo] + u * (v[lo + 1] - v[lo]);
    const double r = v[i] - interp;
    sse += r * r;
    ++count;
  }
  if (count < 8) return 1.0;
  return std::sqrt(sse / static_cast<double>(count)) / rms_spread;
}

}  // namespace

FrequencyFit fit_frequency(const std::vector<double>& t,
                           const std::vector<double>& values) {
  const std::size_t n = t.size();
  if (n != values.size()) {
    throw std::invalid_argument("fit_frequency: series lengths differ (" +
                                std::to_string(n) + " vs " +
                                std::to_string(values.size()) + ")");
  }
  if (n < 64) {
    throw std::invalid_argument("fit_frequency: need at least 64 points, got " +
                                std::to_string(n));
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (dt <= 0.0) {
    throw std::invalid_argument("fit_frequency: grid must ascend");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(t[i + 1] - t[i] - dt) > 1e-9 * std::max(1.0, dt)) {
      throw std::invalid_argument("fit_frequency: non-uniform grid at index " +
                                  std::to_string(i));
    }
  }

  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double power = 0.0;
  for (double v : values) power += (v - mean) * (v - mean);
  power /= static_cast<double>(n);

  FrequencyFit fit;
  fit.offset = mean;
  if (power < 1e-24) {
    return fit;  // constant series: not periodic, amplitude 0
  }
  const double rms_spread = std::sqrt(power);

  // discrete spectral peak of the centered series
  std::size_t best_bin = 1;
  double best_power = -1.0;
  const double bin_width = kTwoPi / (static_cast<double>(n) * dt);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double omega = bin_width * static_cast<double>(k);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = omega * static_cast<double>(i) * dt;
      const double centered = values[i] - mean;
      re += centered * std::cos(phase);
      im -= centered * std::sin(phase);
    }
    const double p = re * re + im * im;
    if (p > best_power) {
      best_power = p;
      best_bin = k;
    }
  }

  // coarse scan around the peak bin, then golden-section refinement
  double lo = bin_width * (static_cast<double>(best_bin) - 1.0);
  double hi = bin_width * (static_cast<double>(best_bin) + 1.0);
  lo = std::max(lo, bin_width * 0.5);
  const int coarse = 512;
  double best_omega = bin_width * static_cast<double>(best_bin);
  double best_sse = sse_at(t, values, best_omega);
  for (int i = 0; i <= coarse; ++i) {
    const double omega = lo + (hi - lo) * static_cast<double>(i) / coarse;
    const double sse = sse_at(t, values, omega);
    if (sse < best_sse) {
      best_sse = sse;
      best_omega = omega;
    }
  }
  const double step = (hi - lo) / coarse;
  double a = std::max(best_omega - step, bin_width * 0.25);
  double b = best_omega + step;
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = sse_at(t, values, x1);
  double f2 = sse_at(t, values, x2);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = sse_at(t, values, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = sse_at(t, values, x2);
    }
  }
  const double omega_hat = 0.5 * (a + b);
  const CosineFit final_fit = fit_at_omega(t, values, omega_hat);

  fit.fundamental_omega = omega_hat;
  fit.amplitude = std::abs(final_fit.a);
  fit.offset = final_fit.c;
  fit.residual_rms = std::sqrt(final_fit.sse / static_cast<double>(n));

  // the fitted frequency may be a harmonic; accept the first shift that
  // maps the series onto itself
  for (int m = 1; m <= 4; ++m) {
    const double period = static_cast<double>(m) * kTwoPi / omega_hat;
    if (period > (t.back() - t.front()) / 2.0) break;
    if (shift_mismatch(t, values, period, dt, rms_spread) <=
        kSimilarityThreshold) {
      fit.is_periodic = true;
      fit.fundamental_omega = omega_hat / static_cast<double>(m);
      break;
    }
  }
  return fit;
}

}  // namespace qsc::harness
