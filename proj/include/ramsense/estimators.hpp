#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Standard and ratio frequency estimators for GHZ survival measurements,
// exact binomial outcome statistics, Monte Carlo sampling, and the
// closed-form uncertainty expressions (GHZ, CSS, moment-based).

namespace ramsense::estimators {

struct GhzProbabilities {
  double p = 0.0;        // survival of |GHZ>
  double p_prime = 0.0;  // survival of |GHZ'>
};

struct EstimatorStats {
  double mean = 0.0;
  double variance = 0.0;
  // fraction of outcome probability mass on which the estimator is
  // real-valued; undefined outcomes are excluded from mean/variance
  double defined_fraction = 1.0;
};

// First and second moments of the collective spin at the measurement time.
struct MomentSet {
  double jx = 0.0;
  double jy = 0.0;
  double jx2 = 0.0;
  double jy2 = 0.0;
};

struct StandardEstimator {
  int n_qubits;
  double tau;
  double gamma_assumed = 0.0;  // 0 = noise-unaware inversion
};

struct RatioEstimator {
  int n_qubits;
  double tau;
};

// p  = (1 + cos(N b tau) e^{-gamma})/2,  p' = (1 + sin(N b tau) e^{-gamma})/2
GhzProbabilities ghz_probabilities(double b, double tau, int n_qubits,
                                   double gamma);

// b-hat = arccos[e^{gamma_assumed} (2 nu_+/nu - 1)]/(N tau); nullopt when the
// arccos argument leaves [-1, 1].
std::optional<double> standard_estimate(long nu_plus, long nu, int n_qubits,
                                        double tau, double gamma_assumed);

// b-hat_R = arctan[(2 nu'_+/nu - 1)/(2 nu_+/nu - 1)]/(N tau), two-argument
// arctangent folded to the principal interval (-pi/2, pi/2]. nullopt only
// when numerator and denominator both vanish.
std::optional<double> ratio_estimate(long nu_plus, long nu_prime_plus, long nu,
                                     int n_qubits, double tau);

// Exact mean/variance over all outcomes of the binomial (standard) or double
// binomial (ratio) distribution; log-space weights, compensated summation.
EstimatorStats exact_outcome_stats(const StandardEstimator& e,
                                   const GhzProbabilities& probs, long nu);
EstimatorStats exact_outcome_stats(const RatioEstimator& e,
                                   const GhzProbabilities& probs, long nu,
                                   int threads = 1);

// Reproducible Monte Carlo outcomes (nu_+, nu'_+); per-shot seeds are derived
// by a splitmix step so the sequence is independent of scheduling.
std::vector<std::pair<long, long>> sample_outcomes(const GhzProbabilities& probs,
                                                   long nu, long shots,
                                                   std::uint64_t seed);

// Method-of-moments uncertainty for GHZ survival, fixed total
// time T. Singular (returns +inf) at sin(N b tau) = 0.
double std_uncertainty_ghz(double b, double tau, int n_qubits, double gamma,
                           double total_time);

// Linearized ratio-estimator uncertainty; no singularity.
double ratio_uncertainty_ghz(double b, double tau, int n_qubits, double gamma,
                             double total_time);

struct CssUncertainties {
  double ratio = 0.0;
  double standard = 0.0;
};

// Collective-CSS closed forms at their optimal phases, fixed total time 2T.
// kappa/xi are the collective coefficients kappa(tau), xi(tau). The ratio
// line uses denominator N (the printed 2N makes the expression negative at
// kappa = xi = 0 and contradicts the derived optimum).
CssUncertainties css_uncertainties(double tau, int n_qubits, double kappa,
                                   double xi, double total_time);

// Moment-propagation uncertainties: ratio (time T per observable) and
// standard (total time 2T). Throw on a degenerate Bloch vector / vanishing
// derivative.
double ratio_uncertainty_moments(const MomentSet& m, double tau,
                                 double total_time);
double std_uncertainty_moments(const MomentSet& m, double tau,
                               double total_time);

}  // namespace ramsense::estimators
