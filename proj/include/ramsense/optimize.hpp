#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ramsense/noise.hpp"
#include "ramsense/oat.hpp"

// Precision optimization: the GHZ spatial function F_N (direct sum, Polygamma
// series, analytic approximation), Lambert-W optimal spacings and times, OAT
// optima, generic bracketed minimization, and N-sweeps with scaling fits.

namespace ramsense::optimize {

struct OptimumRecord {
  int n_qubits = 0;
  double x0_opt = 0.0;
  double tau_opt = 0.0;
  double delta_b_opt = 0.0;
  enum class Method { kNumeric, kAnalytic } method = Method::kNumeric;
};

struct ScalingFit {
  double exponent = 0.0;   // log-log least-squares slope of delta_b vs N
  double prefactor = 0.0;  // exp(intercept)
  double r_squared = 0.0;
};

enum class SweepKind { kGhz, kOat, kCss };

struct SweepResult {
  std::vector<OptimumRecord> records;
  ScalingFit fit;
  // GHZ only: least-squares constant of delta_b * N * sqrt(T/w_c) / sqrt(log N)
  double hl_constant = 0.0;
  // OAT/CSS: mean of delta_b * N^{3/4} resp. N^{1/4} (fixed-slope prefactor)
  double fixed_slope_prefactor = 0.0;
};

// F_N(x0) = kappa0^2 [N delta1(0) + 2 sum_{j<N} (N-j) delta1(j x0 w_c/v)].
double f_n_direct(int n_qubits, double x0, const noise::NoiseParams& p);

// Same value assembled from Polygamma functions (s = 3 only):
// S_N = 2N A - 2B with
//   A = [Re psi3(1+i/x0) - Re psi3(N+i/x0)] / (6 x0^4)
//   B = [Re psi2(N+i/x0) - Re psi2(1+i/x0)] / (2 x0^4)
//       + [Im psi3(1+i/x0) - Im psi3(N+i/x0)] / (6 x0^5)
// and F_N = kappa0^2 [N + S_N]. Throws for s != 3.
double f_n_polygamma(int n_qubits, double x0, const noise::NoiseParams& p);

// Two-term small-x0 approximation (alpha = 1, s = 3), v = pi/x0:
//   F_N ~ 16 N v^4 e^{-2v} + 2 v^2/pi^2 + 1
// (Poisson/Euler-Maclaurin reduction of the direct sum; accurate to a few
// percent for x0 <~ 0.5.)
double f_n_analytic(int n_qubits, double x0);

// Lambert-W closed forms of the short-time GHZ optimum. W below denotes
// W_0(-e^{-1/2}/4).
//   tau_opt   = (1/2) w_c^{-1} F^{-1/2} sqrt(1 + 2W)
//   delta_b   = sqrt(2) (1+2W)^{1/4} / sqrt(-W) * sqrt(w_c/T) F^{1/4} / N
// The tau expression equals the direct minimizer of the short-time ratio
// uncertainty; the uncertainty mapping uses the canonical ~2.96 prefactor.
double ghz_optimal_time(double f_value, double omega_c);
double ghz_time_optimized_uncertainty(double f_value, double omega_c,
                                      double total_time, int n_qubits);

// Analytic optimal spacing: x0 = pi / v_an, v_an = -(3/2) [L1 - L2],
// L1 = log|a|, L2 = log(-L1), a = -(3 pi^{2/3} N^{1/3})^{-1}.
double ghz_x0_analytic(int n_qubits);

// Canonical uncertainty evaluated on the analytic chain (alpha = 1, s = 3).
double ghz_optimal_uncertainty_analytic(int n_qubits, double omega_c,
                                        double total_time);

// Quartic-expansion optimal time and its uncertainty:
//   tau_opt = sqrt(Delta/(6 a4))/w_c, Delta = sqrt(12 a0 a4 + a2^2) - a2.
double oat_optimal_time(const oat::ExpansionCoefficients& c, double omega_c);
double oat_optimal_uncertainty(const oat::ExpansionCoefficients& c,
                               double omega_c, double total_time);

// x0 minimizing the a2 coefficient, asymptotic closed form.
double oat_x0_analytic(int n_qubits);

// Golden-section minimization on [lo, hi] to 1e-6 in the argument. The
// function must be unimodal on the bracket; non-finite values abort.
struct Minimum1d {
  double x = 0.0;
  double value = 0.0;
};
Minimum1d minimize_1d(const std::function<double(double)>& f, double lo,
                      double hi);

// Coarse grid over x0 with an inner tau minimization, then golden refinement
// of both arguments.
struct Bounds2d {
  double tau_lo, tau_hi;
  double x0_lo, x0_hi;
  int x0_grid = 61;
};
OptimumRecord minimize_2d(const std::function<double(double, double)>& f,
                          int n_qubits, const Bounds2d& bounds);

// Per-N optimization plus a scaling fit over the sweep. GHZ sweeps use the
// short-time factorization (x0 from F_N, tau and uncertainty from the
// Lambert-W closed forms); OAT sweeps minimize the moment-based ratio
// uncertainty in (tau, x0); CSS sweeps minimize the collective closed forms
// over tau.
SweepResult sweep_and_fit(SweepKind kind, const std::vector<int>& n_list,
                          const noise::NoiseParams& p, double total_time);

}  // namespace ramsense::optimize
