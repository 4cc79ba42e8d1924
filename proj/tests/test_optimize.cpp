#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramsense/estimators.hpp"
#include "ramsense/optimize.hpp"
#include "ramsense/specfun.hpp"

using namespace ramsense;
using namespace ramsense::optimize;

namespace {

const noise::NoiseParams kSupra{1.0, 3.0, 1.0, 1.0};

}

TEST_CASE("spatial function direct sum") {
  CHECK(f_n_direct(1, 0.5, kSupra) == doctest::Approx(6.0));
  CHECK(f_n_direct(3, 1.0, kSupra) == doctest::Approx(11.8656).epsilon(1e-10));
  CHECK(f_n_direct(4, 0.0, kSupra) == doctest::Approx(6.0 * 16.0));
}

TEST_CASE("polygamma series equals the direct sum") {
  for (int n : {2, 3, 10, 100, 500})
    for (double x0 : {0.1, 0.43, 1.0, 3.0})
      CHECK(f_n_polygamma(n, x0, kSupra) ==
            doctest::Approx(f_n_direct(n, x0, kSupra)).epsilon(1e-10));
  noise::NoiseParams wrong_s = kSupra;
  wrong_s.s = 2.0;
  CHECK_THROWS_AS(f_n_polygamma(3, 0.5, wrong_s), std::invalid_argument);
}

TEST_CASE("analytic spatial function") {
  // matches the direct sum to ~10% on the small-spacing window
  for (double x0 : {0.3, 0.35, 0.4, 0.45, 0.5})
    CHECK(f_n_analytic(100, x0) ==
          doctest::Approx(f_n_direct(100, x0, kSupra)).epsilon(0.10));
  // first term is linear in N
  const double x0 = 0.4;
  const double v = std::numbers::pi / x0;
  CHECK(f_n_analytic(200, x0) - f_n_analytic(100, x0) ==
        doctest::Approx(16.0 * 100 * std::pow(v, 4) * std::exp(-2.0 * v))
            .epsilon(1e-9));
  // x0 -> 0: the v^2 term dominates, F -> 2/x0^2 (kappa0^2 = 6 included)
  CHECK(f_n_analytic(100, 1e-3) == doctest::Approx(2e6).epsilon(1e-3));
}

TEST_CASE("lambert-w optimal time and uncertainty") {
  const double w = specfun::lambert_w(0, -std::exp(-0.5) / 4.0);
  const double pref = std::sqrt(2.0) * std::pow(1.0 + 2.0 * w, 0.25) / std::sqrt(-w);
  CHECK(pref == doctest::Approx(2.953).epsilon(0.0035));  // quoted ~2.96

  // delta_b scales exactly as F^(1/4)/N
  const double u1 = ghz_time_optimized_uncertainty(2.0, 1.0, 1.0, 100);
  const double u2 = ghz_time_optimized_uncertainty(32.0, 1.0, 1.0, 100);
  CHECK(u2 / u1 == doctest::Approx(2.0).epsilon(1e-12));
  // F quadrupled -> tau halved
  CHECK(ghz_optimal_time(4.0, 1.0) ==
        doctest::Approx(0.5 * ghz_optimal_time(1.0, 1.0)).epsilon(1e-12));

  // closed form equals the direct minimizer of the short-time ratio variance
  for (double f_val : {6e4, 14.2, 230.0}) {
    const auto direct = minimize_1d(
        [&](double tau) {
          return (std::exp(2.0 * f_val * tau * tau) - 0.5) / tau;
        },
        1e-4 / std::sqrt(f_val), 10.0 / std::sqrt(f_val));
    CHECK(ghz_optimal_time(f_val, 1.0) ==
          doctest::Approx(direct.x).epsilon(1e-3));
  }
}

TEST_CASE("analytic optimal spacing") {
  // arithmetic chain from the truncated W_{-1} expansion
  CHECK(ghz_x0_analytic(100) == doctest::Approx(0.4533).epsilon(2e-3));
  // numeric minimizer of the spatial function at N = 100
  const auto sweep = sweep_and_fit(SweepKind::kGhz, {100}, kSupra, 1.0);
  CHECK(sweep.records[0].x0_opt == doctest::Approx(0.43).epsilon(0.05));
  CHECK(std::abs(sweep.records[0].x0_opt - 0.4296) < 0.02);
  // decreasing in N
  CHECK(ghz_x0_analytic(100000) < ghz_x0_analytic(1000));
  CHECK(ghz_x0_analytic(1000) < ghz_x0_analytic(20));
}

TEST_CASE("optimum is robust to spacing errors") {
  // the time-optimized uncertainty scales as F^(1/4), so a +-0.05 spacing
  // error costs < 5% precision (F itself moves by ~13% at N = 100)
  const auto sweep = sweep_and_fit(SweepKind::kGhz, {100}, kSupra, 1.0);
  const double x_opt = sweep.records[0].x0_opt;
  const double u_opt =
      ghz_time_optimized_uncertainty(f_n_direct(100, x_opt, kSupra), 1.0, 1.0, 100);
  for (double dx : {-0.05, 0.05}) {
    const double u = ghz_time_optimized_uncertainty(
        f_n_direct(100, x_opt + dx, kSupra), 1.0, 1.0, 100);
    CHECK(u < 1.05 * u_opt);
    CHECK(f_n_direct(100, x_opt + dx, kSupra) <
          1.15 * f_n_direct(100, x_opt, kSupra));
  }
}

TEST_CASE("analytic chain tracks the numeric optimum") {
  const auto sweep =
      sweep_and_fit(SweepKind::kGhz, {20, 100, 1000}, kSupra, 1.0);
  for (const auto& r : sweep.records) {
    const double analytic =
        ghz_optimal_uncertainty_analytic(r.n_qubits, 1.0, 1.0);
    CHECK(analytic == doctest::Approx(r.delta_b_opt).epsilon(0.05));
  }
}

TEST_CASE("minimized analytic spatial function is in the log^2 class") {
  // At the stationary point the exponential term reduces to 2v/pi^2, so
  // F(x0_an) -> (2/pi^2) v_an^2 with v_an = pi/x0_an ~ (3/2) log(...). The
  // ratio approaches 1 from above as N grows; the bare log-log slope over
  // reachable N stays near 1 because of the log log corrections.
  double prev = 1e9;
  for (int n : {100, 10000, 1000000, 1000000000}) {
    const double v = std::numbers::pi / ghz_x0_analytic(n);
    const double ratio = f_n_analytic(n, ghz_x0_analytic(n)) /
                         (2.0 * v * v / (std::numbers::pi * std::numbers::pi));
    CHECK(ratio > 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev < 1.15);  // 1.137 at N = 1e9; the approach to 1 is O(1/log N)
}

TEST_CASE("oat expansion optima") {
  // a2 = 0 limit of the closed form
  oat::ExpansionCoefficients c{10.0, 3.0, 0.0, 5.0};
  CHECK(oat_optimal_time(c, 1.0) ==
        doctest::Approx(std::pow(12.0 * 3.0 * 5.0, 0.25) / std::sqrt(6.0 * 5.0))
            .epsilon(1e-12));

  // closed form matches direct minimization of the expansion
  const auto coeffs = oat::expansion_coefficients(120, 0.45, kSupra);
  const double tau_cf = oat_optimal_time(coeffs, 1.0);
  const auto direct = minimize_1d(
      [&](double t) {
        return oat::oat_uncertainty_expansion(t, coeffs, kSupra, 1.0);
      },
      tau_cf / 6.0, tau_cf * 6.0);
  CHECK(tau_cf == doctest::Approx(direct.x).epsilon(1e-3));
  CHECK(oat_optimal_uncertainty(coeffs, 1.0, 1.0) ==
        doctest::Approx(direct.value).epsilon(1e-6));
}

TEST_CASE("oat analytic spacing") {
  // close to the minimizer of the a2 coefficient at N = 30
  const auto a2_min = minimize_1d(
      [&](double x0) { return oat::expansion_coefficients(30, x0, kSupra).a2; },
      0.2, 1.2);
  CHECK(std::abs(oat_x0_analytic(30) - a2_min.x) < 0.05);
  // decreasing in N
  CHECK(oat_x0_analytic(3000) < oat_x0_analytic(30));
}

TEST_CASE("oat numeric 2d optimum at N = 30") {
  const auto sweep = sweep_and_fit(SweepKind::kOat, {30}, kSupra, 1.0);
  CHECK(std::abs(sweep.records[0].x0_opt - 0.46) < 0.03);
}

TEST_CASE("generic minimizers") {
  const auto m = minimize_1d([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0,
                             5.0);
  CHECK(m.x == doctest::Approx(2.0).epsilon(1e-5));
  CHECK_THROWS_AS(
      minimize_1d([](double) { return std::nan(""); }, 0.0, 1.0),
      std::runtime_error);

  // collective ratio uncertainty: minimizer agrees with the Lambert-W time
  const int n = 100;
  const double f_coll = n * n * 6.0;
  const auto rec = minimize_1d(
      [&](double t) {
        const double gamma = f_coll * t * t;
        return estimators::ratio_uncertainty_ghz(
            std::numbers::pi / (4.0 * n * t), t, n, gamma, 1.0);
      },
      1e-4, 0.02);
  CHECK(rec.x == doctest::Approx(ghz_optimal_time(f_coll, 1.0)).epsilon(1e-3));

  const auto rec2d = minimize_2d(
      [&](double tau, double x0) {
        const double gamma = f_n_direct(n, x0, kSupra) * tau * tau;
        return estimators::ratio_uncertainty_ghz(
            std::numbers::pi / (4.0 * n * tau), tau, n, gamma, 1.0);
      },
      n, {1e-3, 1.0, 0.1, 2.0, 77});
  CHECK(std::abs(rec2d.x0_opt - 0.4296) < 0.02);
}

TEST_CASE("css sweep recovers the quarter-power scaling") {
  const auto sweep =
      sweep_and_fit(SweepKind::kCss, {50, 140, 400, 1100, 3000}, kSupra, 1.0);
  CHECK(sweep.fit.exponent == doctest::Approx(-0.25).epsilon(0.08));
  CHECK(sweep.fit.r_squared > 0.999);
}

TEST_CASE("sweep input validation") {
  CHECK_THROWS_AS(sweep_and_fit(SweepKind::kGhz, {}, kSupra, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_and_fit(SweepKind::kGhz, {50, 20}, kSupra, 1.0),
                  std::invalid_argument);
}
