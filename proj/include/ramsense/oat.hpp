#pragma once

#include "ramsense/estimators.hpp"
#include "ramsense/noise.hpp"

// One-axis-twisted / coherent spin state inputs: squeezing angles, exact
// initial collective-spin correlators, short-time moments on the lattice
// under classical dephasing, and the quartic-in-time uncertainty expansion
// feeding the optimizer.

namespace ramsense::oat {

// Twisting angles follow the convention in which the optimal twist scales as
// 12^{1/6} 2^{2/3} N^{-2/3}; with the collective generator J_z^2 the applied
// phase is theta/2 (validated against the exact simulator: this is the
// convention under which these angles minimize the initial y-variance).
inline constexpr double kTwistPhaseScale = 0.5;

struct OatAngles {
  double theta = 0.0;  // twisting
  double beta = 0.0;   // rotation about x
};

// h0 = |initial Bloch amplitude|, a_{2k} = Taylor coefficients of the squared
// numerator of the y-moment uncertainty in powers of (w_c tau)^2.
struct ExpansionCoefficients {
  double h0 = 0.0;
  double a0 = 0.0;
  double a2 = 0.0;
  double a4 = 0.0;
};

// Exact t = 0 correlators of e^{-i beta Jx} e^{-i (theta/2) Jz^2} |+>^N:
// q0 = <Jx(0)>, c1 = <s+ s->-pair, c2 = Re <s+ s+>-pair.
struct InitialCorrelators {
  double q0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Large-N optimal angles (theta ~ 12^{1/6} 2^{2/3} N^{-2/3},
// beta ~ pi/2 - 3^{-1/6} N^{-1/3} - 3^{1/6} N^{-2/3}/2).
OatAngles optimal_angles(int n_qubits);

InitialCorrelators initial_correlators(int n_qubits, const OatAngles& angles);

// Collective-spin moments at phase phi = b tau under classical lattice
// dephasing in the short-time regime (quantum-noise phase disregarded):
//   <Jx> = e^{-kd} Q0 cos(phi),  <Jv^2> = N/4 + e^{-2 kd}[C1 G+ +/- cos(2phi) C2 G-]
// with kd = kappa0^2 (w_c tau)^2 and G+- the lattice sums over e^{+-2 kd delta1}.
// Exact for classical dephasing given the short-time coefficients.
estimators::MomentSet moments_short_time(double tau, const noise::LatticeGeometry& g,
                                         const noise::NoiseParams& p,
                                         const OatAngles& angles, double b);

// Taylor coefficients of the tau-expansion of the phase-optimal ratio
// uncertainty (phi = k pi): Delta-b^2 = [a0 + a2 u^2 + a4 u^4]/(T tau h0^2).
ExpansionCoefficients expansion_coefficients(int n_qubits, double x0,
                                             const noise::NoiseParams& p);

// sqrt(a0 + a2 u^2 + a4 u^4)/(sqrt(T tau) h0), u = w_c tau.
double oat_uncertainty_expansion(double tau, const ExpansionCoefficients& c,
                                 const noise::NoiseParams& p, double total_time);

}  // namespace ramsense::oat
