#pragma once

#include <Eigen/Dense>
#include <vector>

// Spin-boson dephasing model on a 1D lattice: spectral density, classical and
// quantum noise spectra, decay/phase dynamic coefficients (adaptive quadrature
// and short-time closed forms), spatial correlators, and the per-basis-pair
// decay and Lamb-shift phase.

namespace ramsense::noise {

struct NoiseParams {
  double alpha = 1.0;    // dimensionless coupling strength
  double s = 3.0;        // Ohmicity
  double omega_c = 1.0;  // cutoff frequency
  double v = 1.0;        // bath propagation speed

  void validate() const;  // throws std::invalid_argument on bad values
  double kappa0_sq() const;  // alpha Gamma(s+1)
  double xi0_cubed() const;  // alpha/6 Gamma(s+2)
};

struct LatticeGeometry {
  int n_qubits = 1;
  double spacing = 0.0;  // qubit n sits at n * spacing; 0 = collective limit

  void validate() const;
  // transit time |n-m| x0 / v
  double transit_time(int n, int m, const NoiseParams& p) const;
};

// Per-pair decay and phase coefficient matrices at a fixed time, in the
// main-text normalization (kappa_nn = kappa0^2 (w_c t)^2 in the short-time
// limit). Symmetric with constant diagonal by construction.
struct DynamicCoefficients {
  double time = 0.0;
  Eigen::MatrixXd kappa;
  Eigen::MatrixXd xi;
};

// z-basis string, entries +1/-1.
struct BasisString {
  std::vector<int> signs;

  static BasisString all_up(int n);
  static BasisString all_down(int n);
};

// J(w) = alpha w_c (w/w_c)^s e^{-w/w_c} for w >= 0.
double spectral_density(double omega, const NoiseParams& p);

// S+_nm(w) = 4 pi J(|w|) cos(w t_nm); even extension in w.
// The quantum spectrum is S- = S+ sgn(w).
double spectrum_plus(double omega, double t_nm, const NoiseParams& p);

// Literal overlap integrals of the classical/quantum spectra (the printed
// normalization). kappa: (1/4) int_0^inf sin^2(wt/2)/w^2 J(w) cos(w t_nm) dw;
// xi: same with (wt - sin wt)/w^2. Adaptive quadrature, absolute tolerance
// 1e-10; non-convergence throws std::runtime_error.
double kappa_quadrature(double t, double t_nm, const NoiseParams& p);
double xi_quadrature(double t, double t_nm, const NoiseParams& p);

// The quadrature forms above carry fixed constants relative to the canonical
// short-time normalization kappa0^2 (w_c t)^2 delta1: kappa by 1/16, xi by
// 1/4. exact_coefficients() rescales with these so both construction paths
// agree as t -> 0.
inline constexpr double kKappaQuadratureToCanonical = 16.0;
inline constexpr double kXiQuadratureToCanonical = 4.0;

// Spatial correlators delta_1, delta_2. Computed from the analytic form
// (1+x^2)^{-n/2} cos(n arctan x), n = s+1 (delta1) or s+2 (delta2), which
// equals u^n T_n(u) at integer order and extends it to non-integer s.
double delta1(double x, double s);
double delta2(double x, double s);

// Short-time factorized coefficients: kappa_nm = kappa0^2 (w_c t)^2
// delta1(w_c t_nm), xi_nm = xi0^3 (w_c t)^3 delta2(w_c t_nm).
DynamicCoefficients short_time_coefficients(double t, const LatticeGeometry& g,
                                            const NoiseParams& p);

// Full-quadrature coefficients rescaled to the canonical normalization.
DynamicCoefficients exact_coefficients(double t, const LatticeGeometry& g,
                                       const NoiseParams& p);

// Decay exponent for the coherence between basis strings a and b. The sign
// differences enter with spin-1/2 weight: gamma = sum_{nm} [(a_n-b_n)/2]
// [(a_m-b_m)/2] kappa_nm, so that the GHZ pair yields exactly
// (w_c t)^2 F_N(x0) and a single flipped qubit decays as e^{-kappa_nn}.
double gamma_pair(const BasisString& a, const BasisString& b,
                  const DynamicCoefficients& c);

// Lamb-shift phase, same weighting: (1/4) sum_{nm} (b_n b_m - a_n a_m) xi_nm.
double phi0_pair(const BasisString& a, const BasisString& b,
                 const DynamicCoefficients& c);

// GHZ decay exponent in the short-time regime, (w_c t)^2 F_N(x0) with
// F_N = kappa0^2 sum_nm delta1(|n-m| x0 w_c / v).
double gamma_ghz_short_time(double t, const LatticeGeometry& g,
                            const NoiseParams& p);

}  // namespace ramsense::noise
