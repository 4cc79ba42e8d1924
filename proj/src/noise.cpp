#include "ramsense/noise.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "ramsense/specfun.hpp"

namespace ramsense::noise {

namespace {

constexpr double kPi = std::numbers::pi;

// Quadrature upper limit in units of omega_c: e^{-40} ~ 4e-18 bounds the tail.
constexpr double kQuadratureCutoff = 40.0;
constexpr double kQuadratureAbsTol = 1e-10;

struct AdaptiveSimpson {
  const std::function<double(double)>& f;
  double tol;
  int max_depth = 60;

  double run(double a, double b) const {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double eps, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps)
      return left + right + delta / 15.0;
    if (depth <= 0)
      throw std::runtime_error("noise: adaptive quadrature did not converge");
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  }
};

// Integrate f over [0, w_max], splitting into panels no wider than half an
// oscillation period of the fastest cos/sin factor.
double integrate_oscillatory(const std::function<double(double)>& f,
                             double w_max, double osc_rate) {
  const int panels =
      std::max(1, static_cast<int>(std::ceil(w_max * std::max(1.0, osc_rate) / kPi)));
  const double h = w_max / panels;
  const AdaptiveSimpson simpson{f, kQuadratureAbsTol / panels};
  double total = 0.0;
  for (int i = 0; i < panels; ++i) total += simpson.run(i * h, (i + 1) * h);
  return total;
}

Eigen::MatrixXd pair_matrix(int n, const std::function<double(int)>& by_sep) {
  Eigen::MatrixXd m(n, n);
  std::vector<double> cache(n);
  for (int j = 0; j < n; ++j) cache[j] = by_sep(j);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cache[std::abs(r - c)];
  return m;
}

}  // namespace

void NoiseParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("NoiseParams: alpha must be > 0");
  if (!(s >= 0.0)) throw std::invalid_argument("NoiseParams: s must be >= 0");
  if (!(omega_c > 0.0)) throw std::invalid_argument("NoiseParams: omega_c must be > 0");
  if (!(v > 0.0)) throw std::invalid_argument("NoiseParams: v must be > 0");
}

double NoiseParams::kappa0_sq() const { return alpha * specfun::gamma_fn(s + 1.0); }

double NoiseParams::xi0_cubed() const {
  return alpha / 6.0 * specfun::gamma_fn(s + 2.0);
}

void LatticeGeometry::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("LatticeGeometry: n_qubits >= 1");
  if (!(spacing >= 0.0)) throw std::invalid_argument("LatticeGeometry: spacing >= 0");
}

double LatticeGeometry::transit_time(int n, int m, const NoiseParams& p) const {
  return std::abs(n - m) * spacing / p.v;
}

BasisString BasisString::all_up(int n) { return {std::vector<int>(n, +1)}; }
BasisString BasisString::all_down(int n) { return {std::vector<int>(n, -1)}; }

double spectral_density(double omega, const NoiseParams& p) {
  if (omega < 0.0) throw std::domain_error("spectral_density: omega >= 0");
  if (omega == 0.0) return p.s == 0.0 ? p.alpha * p.omega_c : 0.0;
  return p.alpha * p.omega_c * std::pow(omega / p.omega_c, p.s) *
         std::exp(-omega / p.omega_c);
}

double spectrum_plus(double omega, double t_nm, const NoiseParams& p) {
  return 4.0 * kPi * spectral_density(std::abs(omega), p) * std::cos(omega * t_nm);
}

double kappa_quadrature(double t, double t_nm, const NoiseParams& p) {
  if (t < 0.0) throw std::domain_error("kappa_quadrature: t >= 0");
  if (t == 0.0) return 0.0;
  auto integrand = [&](double w) {
    // sin^2(wt/2)/w^2 -> t^2/4 as w -> 0
    const double filt =
        (w * t < 1e-6) ? t * t / 4.0 : std::pow(std::sin(0.5 * w * t) / w, 2);
    return filt * spectral_density(w, p) * std::cos(w * t_nm);
  };
  return 0.25 * integrate_oscillatory(integrand, kQuadratureCutoff * p.omega_c,
                                      t + std::abs(t_nm));
}

double xi_quadrature(double t, double t_nm, const NoiseParams& p) {
  if (t < 0.0) throw std::domain_error("xi_quadrature: t >= 0");
  if (t == 0.0) return 0.0;
  auto integrand = [&](double w) {
    // (wt - sin wt)/w^2 -> w t^3/6 as w -> 0
    const double x = w * t;
    const double filt = (x < 1e-4) ? w * t * t * t / 6.0 : (x - std::sin(x)) / (w * w);
    return filt * spectral_density(w, p) * std::cos(w * t_nm);
  };
  return 0.25 * integrate_oscillatory(integrand, kQuadratureCutoff * p.omega_c,
                                      t + std::abs(t_nm));
}

double delta1(double x, double s) {
  if (x < 0.0) throw std::domain_error("delta1: x >= 0");
  const double n = s + 1.0;
  return std::pow(1.0 + x * x, -0.5 * n) * std::cos(n * std::atan(x));
}

double delta2(double x, double s) {
  if (x < 0.0) throw std::domain_error("delta2: x >= 0");
  const double n = s + 2.0;
  return std::pow(1.0 + x * x, -0.5 * n) * std::cos(n * std::atan(x));
}

DynamicCoefficients short_time_coefficients(double t, const LatticeGeometry& g,
                                            const NoiseParams& p) {
  g.validate();
  p.validate();
  const double wt = p.omega_c * t;
  const double k0 = p.kappa0_sq() * wt * wt;
  const double x0 = p.xi0_cubed() * wt * wt * wt;
  DynamicCoefficients c;
  c.time = t;
  c.kappa = pair_matrix(g.n_qubits, [&](int j) {
    return k0 * delta1(p.omega_c * g.transit_time(0, j, p), p.s);
  });
  c.xi = pair_matrix(g.n_qubits, [&](int j) {
    return x0 * delta2(p.omega_c * g.transit_time(0, j, p), p.s);
  });
  return c;
}

DynamicCoefficients exact_coefficients(double t, const LatticeGeometry& g,
                                       const NoiseParams& p) {
  g.validate();
  p.validate();
  DynamicCoefficients c;
  c.time = t;
  c.kappa = pair_matrix(g.n_qubits, [&](int j) {
    return kKappaQuadratureToCanonical *
           kappa_quadrature(t, g.transit_time(0, j, p), p);
  });
  c.xi = pair_matrix(g.n_qubits, [&](int j) {
    return kXiQuadratureToCanonical * xi_quadrature(t, g.transit_time(0, j, p), p);
  });
  return c;
}

double gamma_pair(const BasisString& a, const BasisString& b,
                  const DynamicCoefficients& c) {
  const int n = static_cast<int>(a.signs.size());
  if (n != static_cast<int>(b.signs.size()) || n != c.kappa.rows())
    throw std::invalid_argument("gamma_pair: dimension mismatch");
  double g = 0.0;
  for (int i = 0; i < n; ++i) {
    const double di = 0.5 * (a.signs[i] - b.signs[i]);
    if (di == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double dj = 0.5 * (a.signs[j] - b.signs[j]);
      if (dj != 0.0) g += di * dj * c.kappa(i, j);
    }
  }
  return g;
}

double phi0_pair(const BasisString& a, const BasisString& b,
                 const DynamicCoefficients& c) {
  const int n = static_cast<int>(a.signs.size());
  if (n != static_cast<int>(b.signs.size()) || n != c.xi.rows())
    throw std::invalid_argument("phi0_pair: dimension mismatch");
  double phi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      phi += 0.25 * (b.signs[i] * b.signs[j] - a.signs[i] * a.signs[j]) * c.xi(i, j);
  return phi;
}

double gamma_ghz_short_time(double t, const LatticeGeometry& g,
                            const NoiseParams& p) {
  const double wt = p.omega_c * t;
  double sum = g.n_qubits;  // delta1(0) = 1 on the diagonal
  for (int j = 1; j < g.n_qubits; ++j)
    sum += 2.0 * (g.n_qubits - j) *
           delta1(p.omega_c * g.transit_time(0, j, p), p.s);
  return p.kappa0_sq() * wt * wt * sum;
}

}  // namespace ramsense::noise
