#include "ramsense/exactsim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ramsense::exactsim {

namespace {

using Complex = std::complex<double>;

int dimension(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("exactsim: n_qubits must be in [1, 12]");
  return 1 << n_qubits;
}

inline int sign_bit(unsigned state, int qubit) {
  return ((state >> qubit) & 1u) ? -1 : +1;
}

// sum_n sigma_z eigenvalues of the basis state
inline int z_sum(unsigned state, int n) {
  return n - 2 * std::popcount(state & ((1u << n) - 1u));
}

}  // namespace

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd m, bool check_psd)
    : n_qubits(n), mat(std::move(m)) {
  const int dim = dimension(n);
  if (mat.rows() != dim || mat.cols() != dim)
    throw std::invalid_argument("DensityMatrix: dimension mismatch");
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > 1e-12 ||
      std::abs(mat.trace().imag()) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  if (check_psd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(int n, const Eigen::VectorXcd& psi) {
  return DensityMatrix(n, psi * psi.adjoint());
}

Eigen::VectorXcd state_vector(StateKind kind, int n_qubits,
                              const oat::OatAngles& angles) {
  const int dim = dimension(n_qubits);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case StateKind::kGhz:
      psi(0) = inv_sqrt2;
      psi(dim - 1) = inv_sqrt2;
      return psi;
    case StateKind::kGhzPrime:
      psi(0) = inv_sqrt2;
      psi(dim - 1) = Complex(0.0, inv_sqrt2);
      return psi;
    case StateKind::kCssX:
      psi.setConstant(std::pow(dim, -0.5));
      return psi;
    case StateKind::kOat: {
      psi.setConstant(std::pow(dim, -0.5));
      const double tw = oat::kTwistPhaseScale * angles.theta;
      for (int i = 0; i < dim; ++i) {
        const double jz = 0.5 * z_sum(i, n_qubits);
        psi(i) *= std::exp(Complex(0.0, -tw * jz * jz));
      }
      // e^{-i beta Jx} as a tensor power of the single-qubit x rotation
      const Complex c(std::cos(0.5 * angles.beta), 0.0);
      const Complex s(0.0, -std::sin(0.5 * angles.beta));
      for (int q = 0; q < n_qubits; ++q) {
        const int step = 1 << q;
        for (int base = 0; base < dim; base += 2 * step)
          for (int i = base; i < base + step; ++i) {
            const Complex a = psi(i), b = psi(i + step);
            psi(i) = c * a + s * b;
            psi(i + step) = s * a + c * b;
          }
      }
      return psi;
    }
  }
  throw std::logic_error("state_vector: unknown kind");
}

DensityMatrix build_state(StateKind kind, int n_qubits,
                          const oat::OatAngles& angles) {
  return DensityMatrix::pure(n_qubits, state_vector(kind, n_qubits, angles));
}

CollectiveSpinOps::CollectiveSpinOps(int n) : n_qubits(n) {
  const int dim = dimension(n);
  jx = Eigen::MatrixXcd::Zero(dim, dim);
  jy = Eigen::MatrixXcd::Zero(dim, dim);
  jz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    jz(i, i) = 0.5 * z_sum(i, n);
    for (int q = 0; q < n; ++q) {
      const int j = i ^ (1 << q);
      jx(j, i) += 0.5;
      // <flip|sigma_y|state> = i * sign(state at q)
      jy(j, i) += Complex(0.0, 0.5 * sign_bit(i, q));
    }
  }
  jz2 = jz * jz;
  if (n <= 6) {
    const Eigen::MatrixXcd comm = jx * jy - jy * jx - Complex(0, 1) * jz;
    if (comm.cwiseAbs().maxCoeff() > 1e-12)
      throw std::logic_error("CollectiveSpinOps: commutator check failed");
  }
}

DensityMatrix evolve(const DensityMatrix& rho0, double b, double t,
                     const noise::DynamicCoefficients& coeffs) {
  const int n = rho0.n_qubits;
  const int dim = 1 << n;
  if (coeffs.kappa.rows() != n)
    throw std::invalid_argument("evolve: coefficients built for different N");

  const bool has_xi = coeffs.xi.size() > 0 && coeffs.xi.cwiseAbs().maxCoeff() > 0.0;
  // q[s] = s^T Xi s, entering phi0 = (q[col] - q[row])/4
  std::vector<double> xi_quad;
  if (has_xi) {
    xi_quad.assign(dim, 0.0);
    for (int s = 0; s < dim; ++s) {
      double q = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          q += sign_bit(s, i) * sign_bit(s, j) * coeffs.xi(i, j);
      xi_quad[s] = q;
    }
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> diff_bits;
  diff_bits.reserve(n);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const Complex v = rho0.mat(r, c);
      if (v == Complex(0.0, 0.0)) continue;
      const unsigned mask = static_cast<unsigned>(r ^ c);
      double gamma = 0.0;
      if (mask != 0u) {
        diff_bits.clear();
        for (int q = 0; q < n; ++q)
          if ((mask >> q) & 1u) diff_bits.push_back(q);
        for (int qi : diff_bits)
          for (int qj : diff_bits)
            gamma += sign_bit(r, qi) * sign_bit(r, qj) * coeffs.kappa(qi, qj);
      }
      double phase = 0.5 * b * t * (z_sum(c, n) - z_sum(r, n));
      if (has_xi) phase += 0.25 * (xi_quad[c] - xi_quad[r]);
      out(r, c) = v * std::exp(-gamma) * std::exp(Complex(0.0, phase));
    }
  }
  return DensityMatrix(n, std::move(out));
}

double expectation(const DensityMatrix& rho, Observable op) {
  const int n = rho.n_qubits;
  const int dim = 1 << n;
  double acc = 0.0;
  switch (op) {
    case Observable::kJx:
      for (int q = 0; q < n; ++q)
        for (int i = 0; i < dim; ++i) acc += 0.5 * rho.mat(i, i ^ (1 << q)).real();
      return acc;
    case Observable::kJy:
      // (rho sigma_y)_{ii} = rho(i, i^q) * i * sign(i at q)
      for (int q = 0; q < n; ++q)
        for (int i = 0; i < dim; ++i)
          acc += -0.5 * sign_bit(i, q) * rho.mat(i, i ^ (1 << q)).imag();
      return acc;
    case Observable::kJx2: {
      acc = 0.25 * n;
      for (int qa = 0; qa < n; ++qa)
        for (int qb = 0; qb < n; ++qb) {
          if (qa == qb) continue;
          const int fl = (1 << qa) | (1 << qb);
          for (int i = 0; i < dim; ++i) acc += 0.25 * rho.mat(i, i ^ fl).real();
        }
      return acc;
    }
    case Observable::kJy2: {
      acc = 0.25 * n;
      for (int qa = 0; qa < n; ++qa)
        for (int qb = 0; qb < n; ++qb) {
          if (qa == qb) continue;
          const int fl = (1 << qa) | (1 << qb);
          for (int i = 0; i < dim; ++i)
            acc += -0.25 * sign_bit(i, qa) * sign_bit(i, qb) *
                   rho.mat(i, i ^ fl).real();
        }
      return acc;
    }
  }
  throw std::logic_error("expectation: unknown observable");
}

double expectation(const DensityMatrix& rho, const Eigen::VectorXcd& proj_state) {
  if (proj_state.size() != rho.mat.rows())
    throw std::invalid_argument("expectation: projector dimension mismatch");
  const Complex v = proj_state.adjoint() * rho.mat * proj_state;
  return v.real();
}

estimators::MomentSet moment_set(const DensityMatrix& rho) {
  return {expectation(rho, Observable::kJx), expectation(rho, Observable::kJy),
          expectation(rho, Observable::kJx2), expectation(rho, Observable::kJy2)};
}

}  // namespace ramsense::exactsim
