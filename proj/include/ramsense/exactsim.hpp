#pragma once

#include <Eigen/Dense>

#include "ramsense/estimators.hpp"
#include "ramsense/noise.hpp"
#include "ramsense/oat.hpp"

// Small-N exact oracle: GHZ/CSS/OAT states as 2^N density matrices, exact
// element-wise dephasing evolution, and collective-spin expectation values.

namespace ramsense::exactsim {

inline constexpr int kMaxQubits = 12;

// Phase convention: H = +b Jz, i.e. element (alpha, beta) picks up
// e^{i (b t / 2) sum_n (beta_n - alpha_n)}. Under it the GHZ survival
// probabilities match (1 + cos/sin(N b tau) e^{-gamma})/2 and
// <Jy(tau)> = +Q e^{-gamma} sin(b tau), so the ratio estimator returns +b.
struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd mat;

  // Validates hermiticity and unit trace to 1e-12. Positive semidefiniteness
  // is guaranteed for pure-state construction; pass check_psd to eigens-check
  // a general matrix (2^N cost).
  DensityMatrix(int n, Eigen::MatrixXcd m, bool check_psd = false);
  static DensityMatrix pure(int n, const Eigen::VectorXcd& psi);
};

enum class StateKind { kGhz, kGhzPrime, kCssX, kOat };

// State vectors in the z basis (bit n of the index: 0 = up, 1 = down).
// OAT: e^{-i beta Jx} e^{-i (theta/2) Jz^2} |+>^N (see oat::kTwistPhaseScale).
// GHZ' = (|up...> + i |down...>)/sqrt(2).
Eigen::VectorXcd state_vector(StateKind kind, int n_qubits,
                              const oat::OatAngles& angles = {});
DensityMatrix build_state(StateKind kind, int n_qubits,
                          const oat::OatAngles& angles = {});

// Collective spin operators as dense matrices; the commutation relation
// [Jx, Jy] = i Jz is verified at construction for N <= 6.
struct CollectiveSpinOps {
  int n_qubits = 0;
  Eigen::MatrixXcd jx, jy, jz, jz2;
  explicit CollectiveSpinOps(int n);
};

// Element-wise dephasing evolution: each element (alpha, beta) is multiplied
// by e^{i b-phase} e^{-gamma_pair} e^{i phi0_pair} with the pair exponents of
// ramsense::noise. Iterates only over nonzero elements of rho0.
DensityMatrix evolve(const DensityMatrix& rho0, double b, double t,
                     const noise::DynamicCoefficients& coeffs);

enum class Observable { kJx, kJy, kJx2, kJy2 };

// Tr(rho O) for the collective-spin observables (bit-flip traversal, no
// dense operator needed) and for a pure-state projector.
double expectation(const DensityMatrix& rho, Observable op);
double expectation(const DensityMatrix& rho, const Eigen::VectorXcd& proj_state);

estimators::MomentSet moment_set(const DensityMatrix& rho);

}  // namespace ramsense::exactsim
