#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramsense/estimators.hpp"
#include "ramsense/oat.hpp"
#include "ramsense/optimize.hpp"

using namespace ramsense;

namespace {

const noise::NoiseParams kSupra{1.0, 3.0, 1.0, 1.0};

// exact collective CSS moments under classical short-time dephasing
// (pair-correlation derivation; oracle for the x0 = 0 limit)
estimators::MomentSet collective_css_oracle(double tau, int n, double phi) {
  const double kd = 6.0 * tau * tau;
  const double f = 0.5 * n * std::exp(-kd);
  const double pairs = 0.5 * n * (n - 1.0);
  const double gp = pairs * std::exp(2.0 * kd);
  const double gm = pairs * std::exp(-2.0 * kd);
  estimators::MomentSet m;
  m.jx = f * std::cos(phi);
  m.jy = f * std::sin(phi);
  const double iso = 0.25 * n + std::exp(-2.0 * kd) * 0.25 * gp;
  const double aniso = std::exp(-2.0 * kd) * 0.25 * gm * std::cos(2.0 * phi);
  m.jx2 = iso + aniso;
  m.jy2 = iso - aniso;
  return m;
}

}  // namespace

TEST_CASE("asymptotic optimal angles") {
  const auto a = oat::optimal_angles(1000);
  CHECK(a.theta == doctest::Approx(0.024022).epsilon(1e-4));
  CHECK(a.beta == doctest::Approx(1.48154).epsilon(1e-4));
  // N -> infinity limit (0, pi/2)
  const auto big = oat::optimal_angles(100000000);
  CHECK(std::abs(big.theta) < 1e-4);
  CHECK(std::abs(big.beta - std::numbers::pi / 2) < 2e-3);
  CHECK_THROWS_AS(oat::optimal_angles(1), std::invalid_argument);
}

TEST_CASE("initial correlators squeeze the y variance") {
  for (int n : {10, 30, 100, 1000}) {
    const auto c = oat::initial_correlators(n, oat::optimal_angles(n));
    const double var0 = 0.25 * n + (c.c1 - c.c2) * 0.5 * n * (n - 1.0);
    CHECK(var0 < 0.25 * n);
    // approaches the asymptotic minimized variance 3^(2/3)/8 N^(1/3)
    const double asym = std::pow(3.0, 2.0 / 3.0) / 8.0 * std::pow(n, 1.0 / 3.0);
    CHECK(var0 == doctest::Approx(asym).epsilon(n >= 1000 ? 0.02 : 0.10));
    // polarization bounded by N/2
    CHECK(c.q0 <= 0.5 * n);
    CHECK(c.q0 > 0.0);
  }
}

TEST_CASE("CSS moments at tau = 0") {
  noise::LatticeGeometry g{12, 0.5};
  const auto m = oat::moments_short_time(0.0, g, kSupra, {0.0, 0.0}, 0.7);
  CHECK(m.jx == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.jy == doctest::Approx(0.0));
  CHECK(m.jy2 == doctest::Approx(3.0).epsilon(1e-12));   // N/4
  CHECK(m.jx2 == doctest::Approx(36.0).epsilon(1e-12));  // N^2/4
}

TEST_CASE("collective CSS moments match the exact closed forms") {
  const int n = 50;
  noise::LatticeGeometry g{n, 0.0};
  const double tau = 0.01;
  for (double b : {0.0, 40.0}) {
    const auto m = oat::moments_short_time(tau, g, kSupra, {0.0, 0.0}, b);
    const auto o = collective_css_oracle(tau, n, b * tau);
    CHECK(m.jx == doctest::Approx(o.jx).epsilon(1e-2));
    CHECK(m.jy == doctest::Approx(o.jy).epsilon(1e-2));
    CHECK(m.jx2 == doctest::Approx(o.jx2).epsilon(1e-2));
    CHECK(m.jy2 == doctest::Approx(o.jy2).epsilon(1e-2));
  }
}

TEST_CASE("moment structure invariants") {
  const int n = 24;
  noise::LatticeGeometry g{n, 0.45};
  const auto angles = oat::optimal_angles(n);
  const double tau = 0.08;
  // |<J>|^2 is phase-independent by construction
  const auto ref = oat::moments_short_time(tau, g, kSupra, angles, 0.0);
  for (double b : {3.0, 11.0}) {
    const auto m = oat::moments_short_time(tau, g, kSupra, angles, b);
    CHECK(m.jx * m.jx + m.jy * m.jy ==
          doctest::Approx(ref.jx * ref.jx + ref.jy * ref.jy).epsilon(1e-12));
    // isotropic part: jx2 + jy2 independent of phase
    CHECK(m.jx2 + m.jy2 == doctest::Approx(ref.jx2 + ref.jy2).epsilon(1e-12));
  }

  // collective degeneracy of the lattice sums: moments equal closed form
  noise::LatticeGeometry coll{n, 0.0};
  const auto m0 = oat::moments_short_time(tau, coll, kSupra, {0.0, 0.0}, 0.0);
  const auto oracle = collective_css_oracle(tau, n, 0.0);
  CHECK(m0.jx2 == doctest::Approx(oracle.jx2).epsilon(1e-12));
  CHECK(m0.jy2 == doctest::Approx(oracle.jy2).epsilon(1e-12));
}

TEST_CASE("expansion coefficients") {
  const auto c = oat::expansion_coefficients(1000, 0.45, kSupra);
  // a0 = initial squeezed variance; printed asymptote 3^(2/3)/8 N^(1/3)
  CHECK(c.a0 == doctest::Approx(2.6003).epsilon(0.02));
  CHECK(c.a0 > 0.0);
  CHECK(c.h0 > 0.0);
  // h0 -> N/2 asymptotically
  CHECK(c.h0 == doctest::Approx(500.0).epsilon(0.08));

  noise::NoiseParams p = kSupra;
  const auto c100 = oat::expansion_coefficients(100, 0.5, p);
  CHECK(c100.a4 > 0.0);
}

TEST_CASE("uncertainty expansion limits") {
  oat::ExpansionCoefficients c{40.0, 2.0, 0.0, 0.0};
  const double tau = 0.05, total = 1.0;
  CHECK(oat::oat_uncertainty_expansion(tau, c, kSupra, total) ==
        doctest::Approx(std::sqrt(2.0 / (total * tau)) / 40.0).epsilon(1e-12));
}

TEST_CASE("expansion agrees with the moments path near the minimum") {
  // at N = 1000 the minimum sits inside the omega_c tau <= 0.1 window
  const int n = 1000;
  const double x0 = 0.36;
  const auto coeffs = oat::expansion_coefficients(n, x0, kSupra);
  noise::LatticeGeometry g{n, x0};
  const auto angles = oat::optimal_angles(n);
  const double tau_opt = optimize::oat_optimal_time(coeffs, 1.0);
  CHECK(tau_opt < 0.1);
  for (double f : {0.6, 1.0, 0.1 / tau_opt}) {
    const double tau = tau_opt * f;
    const auto m = oat::moments_short_time(tau, g, kSupra, angles, 0.0);
    const double via_moments =
        std::sqrt(estimators::ratio_uncertainty_moments(m, tau, 1.0));
    const double via_expansion =
        oat::oat_uncertainty_expansion(tau, coeffs, kSupra, 1.0);
    CHECK(via_expansion == doctest::Approx(via_moments).epsilon(0.03));
  }

  // the closed-form optimal time matches direct minimization of the expansion
  const auto direct = optimize::minimize_1d(
      [&](double t) {
        return oat::oat_uncertainty_expansion(t, coeffs, kSupra, 1.0);
      },
      tau_opt / 5.0, tau_opt * 5.0);
  CHECK(direct.x == doctest::Approx(tau_opt).epsilon(1e-3));
}
