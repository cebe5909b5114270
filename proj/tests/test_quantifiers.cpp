#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "qsc/quantifiers.hpp"

using qsc::evolution::ising_hamiltonian;
using qsc::linalg::Complex;
using qsc::linalg::ComplexMatrix;
using qsc::linalg::ComplexVector;
using qsc::ops::Pauli;
using qsc::states::Bell;
using qsc::states::QuantumState;

namespace {

const ComplexMatrix kH = ising_hamiltonian({0.7, 0.3, 1, 1});

QuantumState maximally_mixed_2q() {
  std::vector<std::pair<double, ComplexVector>> parts;
  for (int i = 0; i < 4; ++i) {
    ComplexVector e = ComplexVector::Zero(4);
    e(i) = 1;
    parts.emplace_back(0.25, e);
  }
  return qsc::states::mixed_state(parts);
}

}  // namespace

TEST_CASE("z at t=0 reduces to the operator algebra") {
  const QuantumState phi = qsc::states::bell_state(Bell::PhiPlus);
  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  CHECK(std::abs(qsc::quant::compute_z(xx, kH, 0.0, phi) - Complex(1, 0)) < 1e-14);
  const ComplexMatrix m = qsc::quant::compute_m(xx, kH, 0.0, phi);
  CHECK(qsc::linalg::max_abs_diff(m, phi.rho) < 1e-15);

  // X and Z on the same qubit anticommute: (XZ)^2 = -I.
  const auto xz = qsc::ops::make_pair(Pauli::X, Pauli::Z, 0, 2);
  const ComplexMatrix mneg = qsc::quant::compute_m(xz, kH, 0.0, phi);
  CHECK(qsc::linalg::max_abs_diff(mneg, ComplexMatrix(-phi.rho)) < 1e-15);
}

TEST_CASE("trace closed form for the x/x pair") {
  // phi family: e^{-4 i jz t} cos(4bt); psi family conjugates the phase.
  const double jz = 0.7, b = 0.3;
  for (double t : {0.0, 0.4, 1.1, 2.9}) {
    const Complex expected =
        std::exp(Complex(0, -4 * jz * t)) * std::cos(4 * b * t);
    const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
    const Complex z_phi = qsc::quant::compute_z(
        xx, kH, t, qsc::states::bell_state(Bell::PhiPlus));
    const Complex z_phi2 = qsc::quant::compute_z(
        xx, kH, t, qsc::states::bell_state(Bell::PhiMinus));
    const Complex z_psi = qsc::quant::compute_z(
        xx, kH, t, qsc::states::bell_state(Bell::PsiPlus));
    CHECK(std::abs(z_phi - expected) < 1e-13);
    CHECK(std::abs(z_phi2 - expected) < 1e-13);
    CHECK(std::abs(z_psi - std::conj(expected)) < 1e-13);
  }
}

TEST_CASE("trace closed form for the x/y pair at zero coupling") {
  const double b = 0.3;
  const ComplexMatrix h0 = ising_hamiltonian({0.0, b, 1, 1});
  const auto xy = qsc::ops::make_pair(Pauli::X, Pauli::Y, 0, 2);
  for (Bell which : {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus}) {
    const QuantumState st = qsc::states::bell_state(which);
    for (double t : {0.25, 0.9, 2.2}) {
      const Complex z = qsc::quant::compute_z(xy, h0, t, st);
      CHECK(std::abs(z - Complex(-std::cos(4 * b * t), 0)) < 1e-13);
    }
  }
}

TEST_CASE("commuting and anticommuting pairs pin the trace") {
  for (Bell which : {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus}) {
    const QuantumState st = qsc::states::bell_state(which);
    for (double t : {0.6, 3.3}) {
      const auto xz = qsc::ops::make_pair(Pauli::X, Pauli::Z, 0, 2);
      const auto yz = qsc::ops::make_pair(Pauli::Y, Pauli::Z, 0, 2);
      const auto zz = qsc::ops::make_pair(Pauli::Z, Pauli::Z, 0, 2);
      CHECK(std::abs(qsc::quant::compute_z(xz, kH, t, st) - Complex(-1, 0)) < 1e-13);
      CHECK(std::abs(qsc::quant::compute_z(yz, kH, t, st) - Complex(-1, 0)) < 1e-13);
      CHECK(std::abs(qsc::quant::compute_z(zz, kH, t, st) - Complex(1, 0)) < 1e-13);
    }
  }
}

TEST_CASE("purification route reproduces the trace") {
  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  const auto xy = qsc::ops::make_pair(Pauli::X, Pauli::Y, 0, 2);

  const QuantumState pure = qsc::states::bell_state(Bell::PsiPlus);
  const QuantumState mixed = maximally_mixed_2q();
  ComplexVector a(4), c(4);
  a << Complex(0.5, 0.1), Complex(-0.2, 0.3), Complex(0.4, 0), Complex(0.1, -0.6);
  c << Complex(0.1, 0), Complex(0.7, -0.2), Complex(-0.3, 0.3), Complex(0.2, 0.2);
  a /= a.norm();
  c /= c.norm();
  const QuantumState rank2 = qsc::states::mixed_state({{0.6, a}, {0.4, c}});

  for (const QuantumState* st : {&pure, &mixed, &rank2}) {
    for (double t : {0.0, 0.8, 2.1}) {
      const Complex direct = qsc::quant::compute_z(xx, kH, t, *st);
      const Complex via = qsc::quant::compute_z_via_purification(xx, kH, t, *st);
      CHECK(std::abs(direct - via) < 1e-12);
      CHECK(std::abs(qsc::quant::compute_z(xy, kH, t, *st) -
                     qsc::quant::compute_z_via_purification(xy, kH, t, *st)) <
            1e-12);
    }
  }
}

TEST_CASE("trace is cyclic in the pair for the maximally mixed state") {
  const QuantumState mixed = maximally_mixed_2q();
  const auto xy = qsc::ops::make_pair(Pauli::X, Pauli::Y, 0, 2);
  const auto yx = qsc::ops::make_pair(Pauli::Y, Pauli::X, 0, 2);
  for (double t : {0.5, 1.9}) {
    CHECK(std::abs(qsc::quant::compute_z(xy, kH, t, mixed) -
                   qsc::quant::compute_z(yx, kH, t, mixed)) < 1e-12);
  }
}

TEST_CASE("basis change leaves every quantity invariant") {
  // Conjugating the pair, the Hamiltonian, and the state by one unitary is a
  // relabeling; build the unitary from a fixed Hermitian seed.
  ComplexMatrix seed(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      seed(i, j) = Complex(0.3 * i - 0.2 * j, 0.1 * (i - j));
  seed = 0.5 * (seed + qsc::linalg::dagger(seed));
  const auto eig = qsc::linalg::hermitian_eig(seed);
  const ComplexMatrix& q = eig.eigenvectors;
  const ComplexMatrix qd = qsc::linalg::dagger(q);

  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  const auto rotated = qsc::ops::make_custom_pair(
      qsc::linalg::matmul(qsc::linalg::matmul(q, xx.w0), qd),
      qsc::linalg::matmul(qsc::linalg::matmul(q, xx.v), qd));
  const ComplexMatrix h_rot = qsc::linalg::matmul(qsc::linalg::matmul(q, kH), qd);

  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  const QuantumState st_rot = qsc::states::pure_state(q * (*st.pure_vector), true);

  for (double t : {0.7, 1.6}) {
    CHECK(std::abs(qsc::quant::compute_z(xx, kH, t, st) -
                   qsc::quant::compute_z(rotated, h_rot, t, st_rot)) < 1e-10);
    CHECK(qsc::quant::otoc_direct(xx, kH, t, st) ==
          doctest::Approx(qsc::quant::otoc_direct(rotated, h_rot, t, st_rot))
              .epsilon(1e-10));
    CHECK(qsc::quant::uhlmann_fidelity(xx, kH, t, st) ==
          doctest::Approx(qsc::quant::uhlmann_fidelity(rotated, h_rot, t, st_rot))
              .epsilon(1e-10));
  }
}

TEST_CASE("fidelity branch expression") {
  CHECK(qsc::quant::otoc_fidelity_branch(4.0 / 9.0, 0.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(qsc::quant::otoc_fidelity_branch(0.25, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(qsc::quant::otoc_fidelity_branch(1.0, 0.0) == 0.0);
  // arg within the clamp band rounds up to zero ...
  CHECK(qsc::quant::otoc_fidelity_branch(0.0, 1e-7) == 2.0);
  // ... but genuinely negative arguments are refused
  CHECK_THROWS_AS(qsc::quant::otoc_fidelity_branch(0.2, 0.5), std::domain_error);
}

TEST_CASE("bures metric from fidelity") {
  CHECK(qsc::quant::bures_metric(1.0) == 0.0);
  CHECK(qsc::quant::bures_metric(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(qsc::quant::bures_metric(4.0 / 9.0) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(qsc::quant::bures_metric(1.0 + 5e-13) == 0.0);
  CHECK(qsc::quant::bures_metric(-5e-13) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(qsc::quant::bures_metric(1.1), std::domain_error);
  CHECK_THROWS_AS(qsc::quant::bures_metric(-0.1), std::domain_error);
}

TEST_CASE("spin-flip concurrence on known states") {
  CHECK(qsc::quant::concurrence_spinflip(qsc::states::bell_state(Bell::PhiPlus)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qsc::quant::concurrence_spinflip(qsc::states::bell_state(Bell::PsiMinus)) ==
        doctest::Approx(1.0).epsilon(1e-15));

  ComplexVector product = ComplexVector::Zero(4);
  product(0) = 1;
  CHECK(qsc::quant::concurrence_spinflip(qsc::states::pure_state(product)) == 0.0);

  ComplexVector partial = ComplexVector::Zero(4);
  partial(0) = std::sqrt(0.8);
  partial(3) = std::sqrt(0.2);
  CHECK(qsc::quant::concurrence_spinflip(qsc::states::pure_state(partial)) ==
        doctest::Approx(0.8).epsilon(1e-14));

  ComplexVector one_qubit(2);
  one_qubit << 1, 0;
  CHECK_THROWS_AS(
      qsc::quant::concurrence_spinflip(qsc::states::pure_state(one_qubit)),
      std::invalid_argument);
  CHECK_THROWS_AS(qsc::quant::concurrence_spinflip(maximally_mixed_2q()),
                  std::invalid_argument);
}

TEST_CASE("trace concurrence") {
  // x/y pair at zero coupling: |Z| = |cos(4bt)|; pick 4bt = pi/4.
  const ComplexMatrix h0 = ising_hamiltonian({0.0, 0.25, 1, 1});
  const auto xy = qsc::ops::make_pair(Pauli::X, Pauli::Y, 0, 2);
  const QuantumState psi = qsc::states::bell_state(Bell::PsiPlus);
  const double pi = std::acos(-1.0);
  CHECK(qsc::quant::concurrence_trace(xy, h0, pi / 4.0, psi) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  ComplexVector complex_amps(4);
  complex_amps << Complex(1, 0), Complex(0, 1), 0, 0;
  const QuantumState complex_state = qsc::states::pure_state(complex_amps, true);
  CHECK_THROWS_AS(qsc::quant::concurrence_trace(xy, h0, 0.5, complex_state),
                  std::invalid_argument);
}

TEST_CASE("m template follows the spin-flip eigenvalue") {
  // States fixed by sigma_y(x)sigma_y satisfy the template and make both
  // trace routes agree; the flipped-sign states break it maximally.
  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  for (Bell which : {Bell::PhiMinus, Bell::PsiPlus}) {
    const QuantumState st = qsc::states::bell_state(which);
    for (double t : {0.0, 0.4, 1.1, 2.9}) {
      const auto rep =
          qsc::quant::check_m_structure(qsc::quant::compute_m(xx, kH, t, st));
      CHECK(rep.matches_template);
      CHECK(rep.residual <= 1e-12);
      CHECK(std::abs(rep.trace_m - rep.trace_flip_m) <= 1e-12);
      CHECK(std::abs(rep.trace_m - qsc::quant::compute_z(xx, kH, t, st)) <= 1e-13);
    }
  }
  for (Bell which : {Bell::PhiPlus, Bell::PsiMinus}) {
    const QuantumState st = qsc::states::bell_state(which);
    for (double t : {0.0, 0.4, 2.9}) {
      const auto rep =
          qsc::quant::check_m_structure(qsc::quant::compute_m(xx, kH, t, st));
      CHECK(!rep.matches_template);
      CHECK(rep.residual == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(qsc::quant::check_m_structure(qsc::linalg::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("balancing points refine against the analytic difference") {
  // 2(1 - cos t) crosses cos t at t = arccos(2/3).
  const double t_star = std::acos(2.0 / 3.0);
  std::vector<double> grid, c, cr;
  for (int i = 0; i <= 70; ++i) {
    const double t = 0.5 + 0.01 * i;
    grid.push_back(t);
    c.push_back(2.0 * (1.0 - std::cos(t)));
    cr.push_back(std::cos(t));
  }
  const auto analytic = [](double t) {
    return 2.0 * (1.0 - std::cos(t)) - std::cos(t);
  };
  const auto refined = qsc::quant::balancing_points(grid, c, cr, analytic);
  REQUIRE(refined.size() == 1);
  CHECK(std::abs(refined[0] - t_star) < 2e-9);

  const auto interpolated = qsc::quant::balancing_points(grid, c, cr);
  REQUIRE(interpolated.size() == 1);
  CHECK(std::abs(interpolated[0] - t_star) < 1e-3);
}

TEST_CASE("balancing points record exact grid zeros") {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  const std::vector<double> c{0.0, 1.0, 0.0};
  const std::vector<double> cr{0.0, 0.0, 0.0};
  const auto points = qsc::quant::balancing_points(grid, c, cr);
  REQUIRE(points.size() == 2);
  CHECK(points[0] == 0.0);
  CHECK(points[1] == 2.0);

  CHECK_THROWS_AS(qsc::quant::balancing_points({}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(qsc::quant::balancing_points(grid, c, {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("evaluate_sample agrees with the individual routes") {
  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  for (double t : {0.3, 1.4, 4.8}) {
    const auto s = qsc::quant::evaluate_sample(xx, kH, t, st);
    CHECK(s.t == t);
    CHECK(s.z == qsc::quant::compute_z(xx, kH, t, st));
    CHECK(s.c_direct == qsc::quant::otoc_direct(xx, kH, t, st));
    CHECK(s.fidelity == qsc::quant::uhlmann_fidelity(xx, kH, t, st));
    CHECK(s.c_fidelity_branch ==
          qsc::quant::otoc_fidelity_branch(s.fidelity, s.z.imag()));
    CHECK(s.bures == qsc::quant::bures_metric(std::min(s.fidelity, 1.0)));
    CHECK(s.concurrence_trace == std::abs(s.z));
    CHECK(s.signed_trace_cos == s.z.real());
    CHECK(s.branch_valid == (s.z.real() >= -1e-12));
    CHECK(std::isfinite(s.concurrence_spinflip));
    CHECK(s.concurrence_spinflip >= 0.0);
    CHECK(s.concurrence_spinflip <= 1.0);
  }
  const auto mixed_sample =
      qsc::quant::evaluate_sample(xx, kH, 0.9, maximally_mixed_2q());
  CHECK(std::isnan(mixed_sample.concurrence_spinflip));
}

TEST_CASE("sample bounds and branch identity over a sweep") {
  const auto xx = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 2);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.05 * i;
    const auto s = qsc::quant::evaluate_sample(xx, kH, t, st);
    CHECK(s.c_direct >= -1e-10);
    CHECK(s.c_direct <= 4.0 + 1e-10);
    CHECK(s.fidelity >= 0.0);
    CHECK(s.fidelity <= 1.0);
    CHECK(s.bures <= std::sqrt(2.0) + 1e-12);
    CHECK(std::abs(s.z) <= 1.0 + 1e-12);
    // pure state: f = |Z|^2, so the branch recovers the direct value exactly
    // whenever Re Z >= 0.
    CHECK(std::abs(s.fidelity - std::norm(s.z)) <= 1e-12);
    if (s.branch_valid) {
      CHECK(std::abs(s.c_direct - s.c_fidelity_branch) <= 1e-10);
    }
  }
}

TEST_CASE("anticommuting pair splits the otoc routes") {
  const auto xz = qsc::ops::make_pair(Pauli::X, Pauli::Z, 0, 2);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  for (double t : {0.0, 0.9, 2.4}) {
    const auto s = qsc::quant::evaluate_sample(xz, kH, t, st);
    CHECK(s.c_direct == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.c_fidelity_branch == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!s.branch_valid);
    CHECK(s.signed_trace_cos == doctest::Approx(-1.0).epsilon(1e-13));
  }
}

TEST_CASE("fully commuting pair is inert, with exact fidelity") {
  const auto zz = qsc::ops::make_pair(Pauli::Z, Pauli::Z, 0, 2);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  for (double t : {0.0, 1.3, 3.8}) {
    const auto s = qsc::quant::evaluate_sample(zz, kH, t, st);
    // W(t) and V stay simultaneously diagonal, so the two evolved vectors are
    // the same bits and the normalized overlap is exactly one.
    CHECK(s.fidelity == 1.0);
    CHECK(s.bures == 0.0);
    CHECK(s.c_direct <= 1e-12);
    CHECK(s.c_fidelity_branch <= 1e-15);
    CHECK(std::abs(s.z - Complex(1, 0)) < 1e-14);
  }
}

TEST_CASE("uncertified pairs are rejected") {
  qsc::ops::OperatorPair raw;
  raw.w0 = qsc::ops::embed_on_qubit(Pauli::X, 0, 2);
  raw.v = qsc::ops::embed_on_qubit(Pauli::X, 0, 2);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  CHECK_THROWS_AS(qsc::quant::otoc_direct(raw, kH, 0.5, st), std::invalid_argument);
  CHECK_THROWS_AS(qsc::quant::evaluate_sample(raw, kH, 0.5, st),
                  std::invalid_argument);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto single = qsc::ops::make_pair(Pauli::X, Pauli::X, 0, 1);
  const QuantumState st = qsc::states::bell_state(Bell::PhiPlus);
  CHECK_THROWS_AS(qsc::quant::compute_m(single, kH, 0.5, st),
                  std::invalid_argument);
  CHECK_THROWS_AS(qsc::quant::uhlmann_fidelity(single, kH, 0.5, st),
                  std::invalid_argument);
  CHECK_THROWS_AS(qsc::quant::compute_z_via_purification(single, kH, 0.5, st),
                  std::invalid_argument);
}
