#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramsense/estimators.hpp"
#include "ramsense/optimize.hpp"

using namespace ramsense;
using namespace ramsense::estimators;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKappa0 = 2.449489742783178;  // sqrt(6), s = 3, alpha = 1

}  // namespace

TEST_CASE("ghz probabilities") {
  const auto a = ghz_probabilities(0.0, 0.1, 100, 0.0);
  CHECK(a.p == doctest::Approx(1.0));
  CHECK(a.p_prime == doctest::Approx(0.5));
  const auto b = ghz_probabilities(1.0, 0.1, 100, 1e9);
  CHECK(b.p == doctest::Approx(0.5));
  CHECK(b.p_prime == doctest::Approx(0.5));
  const auto c = ghz_probabilities(kPi / 2.0 / 10.0, 1.0, 10, 0.0);
  CHECK(c.p == doctest::Approx(0.5));
  CHECK(c.p_prime == doctest::Approx(1.0));
}

TEST_CASE("standard estimate inversion") {
  const int n = 10;
  const double tau = 0.2;
  CHECK(*standard_estimate(200, 400, n, tau, 0.3) ==
        doctest::Approx(kPi / (2.0 * n * tau)));
  CHECK(*standard_estimate(400, 400, n, tau, 0.0) == doctest::Approx(0.0));
  CHECK(!standard_estimate(400, 400, n, tau, 0.1).has_value());
}

TEST_CASE("ratio estimate inversion") {
  const int n = 10;
  const double tau = 0.2;
  // equal positive offsets -> arctan(1)
  CHECK(*ratio_estimate(300, 300, 400, n, tau) ==
        doctest::Approx(kPi / (4.0 * n * tau)));
  CHECK(*ratio_estimate(300, 200, 400, n, tau) == doctest::Approx(0.0));
  // vertical limit
  CHECK(*ratio_estimate(200, 350, 400, n, tau) ==
        doctest::Approx(kPi / (2.0 * n * tau)));
  // negative denominator folds into the principal interval
  CHECK(*ratio_estimate(100, 300, 400, n, tau) ==
        doctest::Approx(std::atan2(0.5, -0.5) / (n * tau) - kPi / (n * tau)));
  CHECK(!ratio_estimate(200, 200, 400, n, tau).has_value());
}

TEST_CASE("exact outcome statistics, degenerate cases") {
  const RatioEstimator re{10, 0.2};
  const auto s = exact_outcome_stats(re, GhzProbabilities{1.0, 1.0}, 1);
  CHECK(s.variance == doctest::Approx(0.0));
  CHECK(s.defined_fraction == doctest::Approx(1.0));

  // standard estimator with gamma_assumed > 0 excludes outcomes
  const StandardEstimator se{10, 0.2, 0.5};
  const auto s2 = exact_outcome_stats(se, ghz_probabilities(0.3, 0.2, 10, 0.0), 50);
  CHECK(s2.defined_fraction < 1.0);
  CHECK(s2.defined_fraction > 0.0);
}

TEST_CASE("ratio estimator mean approaches the true frequency") {
  const int n = 100;
  const double tau = 0.0028;
  const double b = kPi / (4.0 * n * tau);
  const auto probs = ghz_probabilities(b, tau, n, 0.12);
  const auto s = exact_outcome_stats(RatioEstimator{n, tau}, probs, 400);
  CHECK(s.mean == doctest::Approx(b).epsilon(0.01));
  CHECK(s.defined_fraction == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ratio estimator is insensitive to the decay rate") {
  // mean tends to arctan(tan(N b tau))/(N tau) regardless of gamma, with
  // monotonically shrinking error in nu
  const int n = 100;
  const double tau = 0.001;
  for (double phase : {0.3, 0.6, 1.0}) {
    const double b = phase / (n * tau);
    const double limit = std::atan(std::tan(phase)) / (n * tau);
    for (double gamma : {0.0, 0.3, 1.0}) {
      double prev_err = 1e300;
      for (long nu : {30L, 400L, 3000L}) {
        const auto probs = ghz_probabilities(b, tau, n, gamma);
        const auto s = exact_outcome_stats(RatioEstimator{n, tau}, probs, nu, 4);
        const double err = std::abs(s.mean - limit) / std::abs(limit);
        CHECK(err < prev_err + 1e-12);
        prev_err = err;
        if (nu >= 400) CHECK(err < 5e-3);
      }
    }
  }
}

TEST_CASE("sampled outcomes are reproducible and consistent") {
  const GhzProbabilities sure{1.0, 0.5};
  for (const auto& [k, kp] : sample_outcomes(sure, 400, 50, 7))
    CHECK(k == 400);

  const auto a = sample_outcomes(GhzProbabilities{0.5, 0.3}, 400, 200, 1234);
  const auto b = sample_outcomes(GhzProbabilities{0.5, 0.3}, 400, 200, 1234);
  CHECK(a == b);

  // law of large numbers: mean of nu_+/nu within 3 binomial sigmas
  const long shots = 100000, nu = 400;
  const auto c = sample_outcomes(GhzProbabilities{0.5, 0.5}, nu, shots, 99);
  double mean = 0.0;
  for (const auto& [k, kp] : c) mean += static_cast<double>(k) / nu;
  mean /= shots;
  const double sigma = std::sqrt(0.25 / nu / shots);
  CHECK(std::abs(mean - 0.5) < 3.0 * sigma);
}

TEST_CASE("GHZ uncertainty formulas") {
  const int n = 100;
  const double tau = 0.002, total = 1.0;
  // noiseless Heisenberg limit at the optimal phase
  const double b_opt = kPi / (2.0 * n * tau);
  CHECK(std_uncertainty_ghz(b_opt, tau, n, 0.0, total) ==
        doctest::Approx(1.0 / (total * tau * n * n)).epsilon(1e-12));
  CHECK(std::isinf(std_uncertainty_ghz(0.0, tau, n, 0.5, total)));

  const double b_ratio = kPi / (4.0 * n * tau);
  CHECK(ratio_uncertainty_ghz(b_ratio, tau, n, 0.0, total) ==
        doctest::Approx(0.5 / (total * tau * n * n)).epsilon(1e-12));
  CHECK(ratio_uncertainty_ghz(0.0, tau, n, 0.0, total) ==
        doctest::Approx(1.0 / (total * tau * n * n)).epsilon(1e-12));

  // collective optimum: tau_opt = 1/(2 kappa0 w_c N)
  const double tau_opt = 1.0 / (2.0 * kKappa0 * n);
  CHECK(tau_opt == doctest::Approx(1.0 / (200.0 * std::sqrt(6.0))).epsilon(1e-12));
  auto objective = [&](double t) {
    const double gamma = n * static_cast<double>(n) * 6.0 * t * t;
    return std_uncertainty_ghz(kPi / (2.0 * n * t), t, n, gamma, total);
  };
  const auto m = optimize::minimize_1d(objective, tau_opt / 4.0, tau_opt * 4.0);
  CHECK(m.x == doctest::Approx(tau_opt).epsilon(1e-3));
}

TEST_CASE("ratio never beats the standard bound pointwise") {
  // linearized ratio form >= standard form with T -> 2T, same parameters
  const int n = 50;
  for (double t : {0.0005, 0.002, 0.01}) {
    const double gamma = n * static_cast<double>(n) * 6.0 * t * t;
    const double ratio =
        ratio_uncertainty_ghz(kPi / (4.0 * n * t), t, n, gamma, 1.0);
    const double std2t =
        std_uncertainty_ghz(kPi / (2.0 * n * t), t, n, gamma, 2.0);
    CHECK(ratio >= std2t * (1.0 - 1e-12));
  }
}

TEST_CASE("noise-unaware estimator bias grows with the decay exponent") {
  const int n = 100;
  const double tau = 0.002;
  const double b = kPi / (2.5 * n * tau);
  double prev = -1.0;
  for (double gamma : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto s = exact_outcome_stats(StandardEstimator{n, tau, 0.0},
                                       ghz_probabilities(b, tau, n, gamma), 400);
    const double bias = std::abs(s.mean - b);
    CHECK(bias >= prev - 1e-9);
    prev = bias;
  }
}

TEST_CASE("linearized ratio variance matches exact enumeration near optimum") {
  const int n = 100;
  const double tau_opt = optimize::ghz_optimal_time(n * n * 6.0, 1.0);
  for (double f : {0.7, 1.0, 1.5}) {
    const double t = tau_opt * f;
    const double gamma = n * static_cast<double>(n) * 6.0 * t * t;
    const double b = kPi / (4.0 * n * t);
    const long nu = 400;
    const auto s = exact_outcome_stats(RatioEstimator{n, t},
                                       ghz_probabilities(b, t, n, gamma), nu, 4);
    const double analytic = ratio_uncertainty_ghz(b, t, n, gamma, nu * t);
    CHECK(s.variance == doctest::Approx(analytic).epsilon(0.05));
  }
}

TEST_CASE("CSS closed forms") {
  const int n = 40;
  const double tau = 0.01, total = 2.0;
  // kappa = xi = 0: both lines reduce to 1/(2 N T tau)
  const auto zero = css_uncertainties(tau, n, 0.0, 0.0, total);
  CHECK(zero.ratio == doctest::Approx(1.0 / (2.0 * n * total * tau)).epsilon(1e-12));
  CHECK(zero.standard ==
        doctest::Approx(1.0 / (2.0 * n * total * tau)).epsilon(1e-12));

  // both optima approach (kappa0 w_c / T)^(1/2) N^(-1/4)
  const double total_t = 1.0;
  for (int nn : {200, 2000}) {
    auto obj_r = [&](double t) {
      const double kap = 6.0 * t * t, xi = 4.0 * t * t * t;
      return css_uncertainties(t, nn, kap, xi, total_t).ratio;
    };
    auto obj_s = [&](double t) {
      const double kap = 6.0 * t * t, xi = 4.0 * t * t * t;
      return css_uncertainties(t, nn, kap, xi, total_t).standard;
    };
    const double target = std::sqrt(kKappa0 / total_t) * std::pow(nn, -0.25);
    const auto r = optimize::minimize_1d(obj_r, 1e-4, 0.5);
    const auto s = optimize::minimize_1d(obj_s, 1e-4, 0.5);
    CHECK(std::sqrt(r.value) == doctest::Approx(target).epsilon(5e-3));
    CHECK(std::sqrt(s.value) == doctest::Approx(target).epsilon(5e-3));
    CHECK(r.x == doctest::Approx(1.0 / (kKappa0 * std::sqrt(nn))).epsilon(0.05));
  }
}

TEST_CASE("moment-propagation uncertainties") {
  const int n = 20;
  const double tau = 0.05, total = 1.0;
  // ideal CSS at phase 0
  MomentSet m{n / 2.0, 0.0, n * n / 4.0, n / 4.0};
  CHECK(ratio_uncertainty_moments(m, tau, total) ==
        doctest::Approx(1.0 / (total * tau * n)).epsilon(1e-12));
  CHECK(std_uncertainty_moments(m, tau, total) ==
        doctest::Approx(1.0 / (2.0 * total * tau * n)).epsilon(1e-12));

  // at phase k pi the ratio expression reduces to DJy^2/(T tau <Jx>^2)
  MomentSet m2{3.0, 0.0, 9.5, 2.2};
  CHECK(ratio_uncertainty_moments(m2, tau, total) ==
        doctest::Approx(2.2 / (total * tau * 9.0)).epsilon(1e-12));

  MomentSet degenerate{0.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(ratio_uncertainty_moments(degenerate, tau, total),
                  std::invalid_argument);
  CHECK_THROWS_AS(std_uncertainty_moments(degenerate, tau, total),
                  std::invalid_argument);

  MomentSet zero_var{n / 2.0, 0.0, n * n / 4.0, 0.0};
  CHECK(std_uncertainty_moments(zero_var, tau, total) == doctest::Approx(0.0));
}
