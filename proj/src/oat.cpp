#include "ramsense/oat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ramsense::oat {

namespace {

// Lattice sums S_p = sum_{j=1}^{N-1} (N-j) delta1(w_c j x0 / v)^p.
double lattice_sum(int n, double x0, const noise::NoiseParams& p, int power) {
  double s = 0.0;
  for (int j = 1; j < n; ++j)
    s += (n - j) * std::pow(noise::delta1(p.omega_c * j * x0 / p.v, p.s), power);
  return s;
}

}  // namespace

OatAngles optimal_angles(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("optimal_angles: N >= 2");
  const double n = n_qubits;
  OatAngles a;
  a.theta = std::pow(12.0, 1.0 / 6.0) * std::pow(2.0, 2.0 / 3.0) *
            std::pow(n, -2.0 / 3.0);
  a.beta = std::numbers::pi / 2.0 -
           std::pow(3.0, -1.0 / 6.0) * std::pow(n, -1.0 / 3.0) -
           0.5 * std::pow(3.0, 1.0 / 6.0) * std::pow(n, -2.0 / 3.0);
  return a;
}

InitialCorrelators initial_correlators(int n_qubits, const OatAngles& angles) {
  const int n = n_qubits;
  const double th = kTwistPhaseScale * angles.theta;
  const double cb = std::cos(angles.beta), sb = std::sin(angles.beta);
  const double cth = std::cos(th), sth = std::sin(th);
  const double c2t_pow = std::pow(std::cos(2.0 * th), n - 2);
  const double cth_pow = std::pow(cth, n - 2);

  const double xx = 0.5 * (1.0 + c2t_pow);                      // <sx sx>
  const double yy_tw = 0.5 * (1.0 - c2t_pow);                   // pre-rotation
  const double yz_tw = 2.0 * sth * cth_pow;                     // <yz + zy>
  const double yy = cb * cb * yy_tw - sb * cb * yz_tw;          // <sy sy>

  InitialCorrelators c;
  c.q0 = 0.5 * n * std::pow(cth, n - 1);
  c.c1 = 0.25 * (xx + yy);
  c.c2 = 0.25 * (xx - yy);
  return c;
}

estimators::MomentSet moments_short_time(double tau, const noise::LatticeGeometry& g,
                                         const noise::NoiseParams& p,
                                         const OatAngles& angles, double b) {
  g.validate();
  p.validate();
  const int n = g.n_qubits;
  const auto corr = initial_correlators(n, angles);
  const double u = p.omega_c * tau;
  const double kd = p.kappa0_sq() * u * u;
  const double phi = b * tau;

  double g_plus = 0.0, g_minus = 0.0;
  for (int j = 1; j < n; ++j) {
    const double d1 = noise::delta1(p.omega_c * g.transit_time(0, j, p), p.s);
    g_plus += (n - j) * std::exp(2.0 * kd * d1);
    g_minus += (n - j) * std::exp(-2.0 * kd * d1);
  }

  estimators::MomentSet m;
  const double amp = std::exp(-kd) * corr.q0;
  m.jx = amp * std::cos(phi);
  m.jy = amp * std::sin(phi);
  const double iso = 0.25 * n + std::exp(-2.0 * kd) * corr.c1 * g_plus;
  const double aniso = std::exp(-2.0 * kd) * std::cos(2.0 * phi) * corr.c2 * g_minus;
  m.jx2 = iso + aniso;
  m.jy2 = iso - aniso;
  return m;
}

ExpansionCoefficients expansion_coefficients(int n_qubits, double x0,
                                             const noise::NoiseParams& p) {
  p.validate();
  const int n = n_qubits;
  const auto corr = initial_correlators(n, optimal_angles(n));
  const double k0sq = p.kappa0_sq();
  const double s0 = lattice_sum(n, x0, p, 1);
  const double s2 = lattice_sum(n, x0, p, 2);

  // numerator(u) = (N/4) e^{2 kd} + C1 G+(kd) - C2 G-(kd), kd = kappa0^2 u^2
  ExpansionCoefficients c;
  c.h0 = corr.q0;
  c.a0 = 0.25 * n + (corr.c1 - corr.c2) * 0.5 * n * (n - 1.0);
  c.a2 = k0sq * (0.5 * n + 2.0 * (corr.c1 + corr.c2) * s0);
  c.a4 = k0sq * k0sq * (0.5 * n + 2.0 * (corr.c1 - corr.c2) * s2);
  return c;
}

double oat_uncertainty_expansion(double tau, const ExpansionCoefficients& c,
                                 const noise::NoiseParams& p, double total_time) {
  if (!(tau > 0.0)) throw std::invalid_argument("oat_uncertainty_expansion: tau > 0");
  const double u2 = std::pow(p.omega_c * tau, 2);
  return std::sqrt((c.a0 + c.a2 * u2 + c.a4 * u2 * u2) / (total_time * tau)) /
         c.h0;
}

}  // namespace ramsense::oat
