#include "ramsense/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ramsense::specfun {

namespace {

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBernoulli2n = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Asymptotic expansion, valid once Re(z) >= kPolygammaShiftThreshold.
Complex polygamma_asymptotic(int m, Complex z) {
  const Complex z1 = 1.0 / z;
  const Complex z2 = z1 * z1;
  if (m == 0) {
    Complex sum = std::log(z) - 0.5 * z1;
    Complex zp = z2;
    for (std::size_t k = 0; k < kBernoulli2n.size(); ++k) {
      const Complex term = kBernoulli2n[k] / (2.0 * (k + 1)) * zp;
      sum -= term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      zp *= z2;
    }
    return sum;
  }
  // psi^(m)(z) ~ (-1)^(m-1) [ (m-1)!/z^m + m!/(2 z^(m+1))
  //                           + sum_k B_2k (2k+m-1)! / ((2k)! z^(2k+m)) ]
  Complex zm = std::pow(z, -m);
  Complex sum = factorial(m - 1) * zm + 0.5 * factorial(m) * zm * z1;
  Complex zp = zm * z2;
  double fact_ratio = factorial(m + 1) / 2.0;  // (2k+m-1)!/(2k)! at k=1
  for (std::size_t k = 0; k < kBernoulli2n.size(); ++k) {
    const Complex term = kBernoulli2n[k] * fact_ratio * zp;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    const double two_k = 2.0 * (k + 1);
    fact_ratio *= (two_k + m) * (two_k + m + 1) / ((two_k + 1) * (two_k + 2));
    zp *= z2;
  }
  return (m % 2 == 0) ? -sum : sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0))
    throw std::domain_error("gamma_fn: argument must be positive, got " +
                            std::to_string(x));
  return std::tgamma(x);
}

Complex polygamma(int m, Complex z) {
  if (m < 0 || m > 6)
    throw std::domain_error("polygamma: order must be in [0, 6]");
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      std::abs(z.real() - std::round(z.real())) < 1e-14)
    throw std::domain_error("polygamma: pole at non-positive integer");

  // psi^(m)(z+1) = psi^(m)(z) + (-1)^m m! z^(-m-1), so climbing to the
  // asymptotic region subtracts the correction terms.
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double mfact = factorial(m);
  Complex acc = 0.0;
  while (z.real() < kPolygammaShiftThreshold) {
    acc -= sign * mfact * std::pow(z, -m - 1);
    z += 1.0;
  }
  return polygamma_asymptotic(m, z) + acc;
}

double lambert_w(int branch, double x) {
  if (branch != 0 && branch != -1)
    throw std::domain_error("lambert_w: branch must be 0 or -1");
  const double inv_e = std::exp(-1.0);
  if (x < -inv_e - 1e-15)
    throw std::domain_error("lambert_w: argument below -1/e");
  if (branch == -1 && x >= 0.0)
    throw std::domain_error("lambert_w: branch -1 requires x < 0");

  if (std::abs(x + inv_e) < 4e-16) return -1.0;
  if (branch == 0 && x == 0.0) return 0.0;

  // Initial guess: branch-point series near -1/e, logarithmic form elsewhere.
  double w;
  const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
  if (p2 < 0.5) {
    const double p = (branch == 0) ? std::sqrt(p2) : -std::sqrt(p2);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (branch == 0) {
    if (x < std::exp(1.0)) {
      w = x / (1.0 + x);  // crude but inside the basin
    } else {
      const double l1 = std::log(x);
      w = l1 - std::log(l1);
    }
  } else {
    const double l1 = std::log(-x);
    w = l1 - std::log(-l1);
  }

  const double tol = 1e-14 * std::max(1.0, std::abs(x));
  for (int it = 0; it < kLambertMaxIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= tol) return w;
    const double w1 = w + 1.0;
    const double denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
    w -= f / denom;
  }
  if (std::abs(w * std::exp(w) - x) <= tol) return w;
  throw std::runtime_error("lambert_w: Halley iteration did not converge");
}

double chebyshev_t(int n, double x) {
  if (n < 0) throw std::domain_error("chebyshev_t: order must be >= 0");
  if (n == 0) return 1.0;
  double tkm1 = 1.0;
  double tk = x;
  for (int k = 1; k < n; ++k) {
    const double tkp1 = 2.0 * x * tk - tkm1;
    tkm1 = tk;
    tk = tkp1;
  }
  return tk;
}

}  // namespace ramsense::specfun
