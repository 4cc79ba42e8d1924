#include "ramsense/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace ramsense::estimators {

namespace {

constexpr double kPi = std::numbers::pi;

// log C(nu, k) + k log p + (nu-k) log(1-p); exact point masses at p = 0, 1.
std::vector<double> log_binomial_pmf(long nu, double p) {
  std::vector<double> lw(nu + 1, -std::numeric_limits<double>::infinity());
  if (p <= 0.0) {
    lw[0] = 0.0;
    return lw;
  }
  if (p >= 1.0) {
    lw[nu] = 0.0;
    return lw;
  }
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(nu + 1.0);
  for (long k = 0; k <= nu; ++k)
    lw[k] = lgn - std::lgamma(k + 1.0) - std::lgamma(nu - k + 1.0) + k * lp +
            (nu - k) * lq;
  return lw;
}

struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic inverse-CDF binomial draw, searching outward from the mode.
long binomial_draw(long nu, double p, double u) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return nu;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgn = std::lgamma(nu + 1.0);
  auto log_pmf = [&](long k) {
    return lgn - std::lgamma(k + 1.0) - std::lgamma(nu - k + 1.0) + k * lp +
           (nu - k) * lq;
  };
  const long mode = std::clamp<long>(static_cast<long>((nu + 1) * p), 0, nu);
  double lo_w = std::exp(log_pmf(mode));
  double cum = lo_w;
  if (u <= cum) return mode;
  double w_down = lo_w, w_up = lo_w;
  long k_down = mode, k_up = mode;
  while (k_down > 0 || k_up < nu) {
    if (k_up < nu) {
      // pmf(k+1)/pmf(k) = (nu-k)/(k+1) * p/(1-p)
      w_up *= static_cast<double>(nu - k_up) / (k_up + 1) * (p / (1.0 - p));
      ++k_up;
      cum += w_up;
      if (u <= cum) return k_up;
    }
    if (k_down > 0) {
      w_down *= static_cast<double>(k_down) / (nu - k_down + 1) *
                ((1.0 - p) / p);
      --k_down;
      cum += w_down;
      if (u <= cum) return k_down;
    }
  }
  return u < 0.5 ? 0 : nu;  // cumulative rounding fell short
}

double principal_atan2(double y, double x) {
  double a = std::atan2(y, x);
  if (a > 0.5 * kPi) a -= kPi;
  if (a <= -0.5 * kPi) a += kPi;
  return a;
}

}  // namespace

GhzProbabilities ghz_probabilities(double b, double tau, int n_qubits,
                                   double gamma) {
  if (gamma < 0.0) throw std::domain_error("ghz_probabilities: gamma >= 0");
  const double phase = n_qubits * b * tau;
  const double decay = std::exp(-gamma);
  return {0.5 * (1.0 + std::cos(phase) * decay),
          0.5 * (1.0 + std::sin(phase) * decay)};
}

std::optional<double> standard_estimate(long nu_plus, long nu, int n_qubits,
                                        double tau, double gamma_assumed) {
  if (nu_plus < 0 || nu_plus > nu)
    throw std::invalid_argument("standard_estimate: counts out of range");
  const double arg =
      std::exp(gamma_assumed) * (2.0 * nu_plus / nu - 1.0);
  if (std::abs(arg) > 1.0) return std::nullopt;
  return std::acos(arg) / (n_qubits * tau);
}

std::optional<double> ratio_estimate(long nu_plus, long nu_prime_plus, long nu,
                                     int n_qubits, double tau) {
  if (nu_plus < 0 || nu_plus > nu || nu_prime_plus < 0 || nu_prime_plus > nu)
    throw std::invalid_argument("ratio_estimate: counts out of range");
  const double gx = 2.0 * nu_plus / nu - 1.0;
  const double gy = 2.0 * nu_prime_plus / nu - 1.0;
  if (gx == 0.0 && gy == 0.0) return std::nullopt;
  return principal_atan2(gy, gx) / (n_qubits * tau);
}

EstimatorStats exact_outcome_stats(const StandardEstimator& e,
                                   const GhzProbabilities& probs, long nu) {
  if (nu < 1 || nu > 2000000)
    throw std::invalid_argument("exact_outcome_stats: bad nu");
  const auto lw = log_binomial_pmf(nu, probs.p);
  KahanSum w_ok, m1, m2;
  for (long k = 0; k <= nu; ++k) {
    const auto est = standard_estimate(k, nu, e.n_qubits, e.tau, e.gamma_assumed);
    if (!est) continue;
    const double w = std::exp(lw[k]);
    w_ok.add(w);
    m1.add(w * *est);
    m2.add(w * *est * *est);
  }
  EstimatorStats out;
  out.defined_fraction = w_ok.sum;
  if (w_ok.sum > 0.0) {
    out.mean = m1.sum / w_ok.sum;
    out.variance = std::max(0.0, m2.sum / w_ok.sum - out.mean * out.mean);
  }
  return out;
}

EstimatorStats exact_outcome_stats(const RatioEstimator& e,
                                   const GhzProbabilities& probs, long nu,
                                   int threads) {
  // (nu+1)^2 terms; the CLI warns above 2000, the hard cap guards runaways
  if (nu < 1 || nu > 10000)
    throw std::invalid_argument(
        "exact_outcome_stats(ratio): nu above the enumeration cap");
  const auto lwx = log_binomial_pmf(nu, probs.p);
  const auto lwy = log_binomial_pmf(nu, probs.p_prime);
  const double scale = 1.0 / (e.n_qubits * e.tau);

  struct Partial {
    double w_ok = 0.0, m1 = 0.0, m2 = 0.0;
  };
  auto run_block = [&](long k_begin, long k_end) {
    KahanSum w_ok, m1, m2;
    for (long k = k_begin; k < k_end; ++k) {
      const double gx = 2.0 * k / nu - 1.0;
      const double wx = std::exp(lwx[k]);
      if (wx == 0.0) continue;
      for (long kp = 0; kp <= nu; ++kp) {
        const double gy = 2.0 * kp / nu - 1.0;
        if (gx == 0.0 && gy == 0.0) continue;
        const double w = wx * std::exp(lwy[kp]);
        const double est = principal_atan2(gy, gx) * scale;
        w_ok.add(w);
        m1.add(w * est);
        m2.add(w * est * est);
      }
    }
    return Partial{w_ok.sum, m1.sum, m2.sum};
  };

  std::vector<Partial> parts;
  threads = std::clamp(threads, 1, 64);
  if (threads == 1) {
    parts.push_back(run_block(0, nu + 1));
  } else {
    parts.resize(threads);
    std::vector<std::thread> pool;
    const long chunk = (nu + threads) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        parts[t] = run_block(t * chunk, std::min<long>((t + 1) * chunk, nu + 1));
      });
    for (auto& th : pool) th.join();
  }
  KahanSum w_ok, m1, m2;  // deterministic reduction order
  for (const auto& p : parts) {
    w_ok.add(p.w_ok);
    m1.add(p.m1);
    m2.add(p.m2);
  }
  EstimatorStats out;
  out.defined_fraction = w_ok.sum;
  if (w_ok.sum > 0.0) {
    out.mean = m1.sum / w_ok.sum;
    out.variance = std::max(0.0, m2.sum / w_ok.sum - out.mean * out.mean);
  }
  return out;
}

std::vector<std::pair<long, long>> sample_outcomes(const GhzProbabilities& probs,
                                                   long nu, long shots,
                                                   std::uint64_t seed) {
  std::vector<std::pair<long, long>> out;
  out.reserve(shots);
  for (long i = 0; i < shots; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x51ed2701u + 2 * i)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long k = binomial_draw(nu, probs.p, unif(rng));
    const long kp = binomial_draw(nu, probs.p_prime, unif(rng));
    out.emplace_back(k, kp);
  }
  return out;
}

double std_uncertainty_ghz(double b, double tau, int n_qubits, double gamma,
                           double total_time) {
  if (!(tau > 0.0) || !(total_time > 0.0))
    throw std::invalid_argument("std_uncertainty_ghz: tau, T > 0");
  const double phase = n_qubits * b * tau;
  const double s2 = std::pow(std::sin(phase), 2);
  if (s2 == 0.0) return std::numeric_limits<double>::infinity();
  const double d2 = std::exp(-2.0 * gamma);
  const double c2 = std::pow(std::cos(phase), 2);
  return (1.0 - d2 * c2) / (d2 * s2) /
         (total_time * tau * n_qubits * n_qubits);
}

double ratio_uncertainty_ghz(double b, double tau, int n_qubits, double gamma,
                             double total_time) {
  if (!(tau > 0.0) || !(total_time > 0.0))
    throw std::invalid_argument("ratio_uncertainty_ghz: tau, T > 0");
  const double phase = 2.0 * n_qubits * b * tau;
  return (std::exp(2.0 * gamma) - 0.5 * std::pow(std::sin(phase), 2)) /
         (total_time * tau * n_qubits * n_qubits);
}

CssUncertainties css_uncertainties(double tau, int n_qubits, double kappa,
                                   double xi, double total_time) {
  if (!(tau > 0.0) || !(total_time > 0.0))
    throw std::invalid_argument("css_uncertainties: tau, T > 0");
  const double n = n_qubits;
  const double cs = std::pow(std::cos(xi), 2.0 * n - 2.0);
  CssUncertainties out;
  out.ratio = (std::exp(kappa) * (n + 1.0) / (n * cs) - 1.0) /
              (2.0 * total_time * tau);
  out.standard = ((n + 1.0) * std::exp(kappa) -
                  (n - 1.0) * std::exp(-kappa) *
                      std::pow(std::cos(2.0 * xi), n - 2.0)) /
                 (2.0 * n * (2.0 * total_time) * tau * cs);
  return out;
}

double ratio_uncertainty_moments(const MomentSet& m, double tau,
                                 double total_time) {
  const double r2 = m.jx * m.jx + m.jy * m.jy;
  if (r2 <= 0.0)
    throw std::invalid_argument("ratio_uncertainty_moments: degenerate Bloch vector");
  const double var_x = m.jx2 - m.jx * m.jx;
  const double var_y = m.jy2 - m.jy * m.jy;
  return (m.jx * m.jx * var_y + m.jy * m.jy * var_x) /
         (total_time * tau * r2 * r2);
}

double std_uncertainty_moments(const MomentSet& m, double tau,
                               double total_time) {
  if (m.jx == 0.0)
    throw std::invalid_argument("std_uncertainty_moments: vanishing derivative");
  const double var_y = m.jy2 - m.jy * m.jy;
  return var_y / (2.0 * total_time * tau * m.jx * m.jx);
}

}  // namespace ramsense::estimators
