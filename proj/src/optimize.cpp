#include "ramsense/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ramsense/estimators.hpp"
#include "ramsense/specfun.hpp"

namespace ramsense::optimize {

namespace {

constexpr double kPi = std::numbers::pi;

double lambert_w_arg() { return -std::exp(-0.5) / 4.0; }

double check_finite(double v) {
  if (!std::isfinite(v))
    throw std::runtime_error("optimize: objective returned a non-finite value");
  return v;
}

// x0 scan window for lattice optimizations; the upper end is the
// decorrelated regime (relevant for sub-Ohmic spectra where no interior
// minimum exists).
constexpr double kX0Lo = 0.05;
constexpr double kX0Hi = 8.0;

}  // namespace

double f_n_direct(int n_qubits, double x0, const noise::NoiseParams& p) {
  if (n_qubits < 1) throw std::invalid_argument("f_n_direct: N >= 1");
  double sum = n_qubits;  // delta1(0) = 1
  for (int j = 1; j < n_qubits; ++j)
    sum += 2.0 * (n_qubits - j) * noise::delta1(p.omega_c * j * x0 / p.v, p.s);
  return p.kappa0_sq() * sum;
}

double f_n_polygamma(int n_qubits, double x0, const noise::NoiseParams& p) {
  if (p.s != 3.0)
    throw std::invalid_argument("f_n_polygamma: series derived for s = 3 only");
  if (!(x0 > 0.0)) throw std::invalid_argument("f_n_polygamma: x0 > 0");
  using specfun::Complex;
  const double x = p.omega_c * x0 / p.v;
  const Complex w(0.0, 1.0 / x);
  const Complex p3a = specfun::polygamma(3, 1.0 + w);
  const Complex p3b = specfun::polygamma(3, static_cast<double>(n_qubits) + w);
  const Complex p2a = specfun::polygamma(2, 1.0 + w);
  const Complex p2b = specfun::polygamma(2, static_cast<double>(n_qubits) + w);
  const double x4 = x * x * x * x;
  const double a = (p3a.real() - p3b.real()) / (6.0 * x4);
  const double b = (p2b.real() - p2a.real()) / (2.0 * x4) +
                   (p3a.imag() - p3b.imag()) / (6.0 * x4 * x);
  const double s_n = 2.0 * n_qubits * a - 2.0 * b;
  return p.kappa0_sq() * (n_qubits + s_n);
}

double f_n_analytic(int n_qubits, double x0) {
  if (!(x0 > 0.0)) throw std::invalid_argument("f_n_analytic: x0 > 0");
  const double v = kPi / x0;
  return 16.0 * n_qubits * std::pow(v, 4) * std::exp(-2.0 * v) +
         2.0 * v * v / (kPi * kPi) + 1.0;
}

double ghz_optimal_time(double f_value, double omega_c) {
  if (!(f_value > 0.0)) throw std::invalid_argument("ghz_optimal_time: F > 0");
  const double w = specfun::lambert_w(0, lambert_w_arg());
  return 0.5 / (omega_c * std::sqrt(f_value)) * std::sqrt(1.0 + 2.0 * w);
}

double ghz_time_optimized_uncertainty(double f_value, double omega_c,
                                      double total_time, int n_qubits) {
  if (!(f_value > 0.0))
    throw std::invalid_argument("ghz_time_optimized_uncertainty: F > 0");
  const double w = specfun::lambert_w(0, lambert_w_arg());
  const double prefactor =
      std::sqrt(2.0) * std::pow(1.0 + 2.0 * w, 0.25) / std::sqrt(-w);
  return prefactor * std::sqrt(omega_c / total_time) * std::pow(f_value, 0.25) /
         n_qubits;
}

double ghz_x0_analytic(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz_x0_analytic: N >= 2");
  const double a =
      -1.0 / (3.0 * std::pow(kPi, 2.0 / 3.0) * std::pow(n_qubits, 1.0 / 3.0));
  if (a < -std::exp(-1.0))
    throw std::domain_error("ghz_x0_analytic: W_{-1} argument below -1/e");
  const double l1 = std::log(-a);
  const double l2 = std::log(-l1);
  const double v = -1.5 * (l1 - l2);
  return kPi / v;
}

double ghz_optimal_uncertainty_analytic(int n_qubits, double omega_c,
                                        double total_time) {
  const double x0 = ghz_x0_analytic(n_qubits);
  return ghz_time_optimized_uncertainty(f_n_analytic(n_qubits, x0), omega_c,
                                        total_time, n_qubits);
}

double oat_optimal_time(const oat::ExpansionCoefficients& c, double omega_c) {
  if (!(c.a4 > 0.0)) throw std::invalid_argument("oat_optimal_time: a4 > 0");
  const double delta =
      std::sqrt(12.0 * c.a0 * c.a4 + c.a2 * c.a2) - c.a2;
  return std::sqrt(delta / (6.0 * c.a4)) / omega_c;
}

double oat_optimal_uncertainty(const oat::ExpansionCoefficients& c,
                               double omega_c, double total_time) {
  noise::NoiseParams unit;
  unit.omega_c = omega_c;
  return oat::oat_uncertainty_expansion(oat_optimal_time(c, omega_c), c, unit,
                                        total_time);
}

double oat_x0_analytic(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("oat_x0_analytic: N >= 2");
  // The x0-dependent part of a2 is proportional to the GHZ spatial function,
  // so its stationarity condition is the same v^3 e^{-2v} = 1/(8 pi^2 N)
  // equation; the asymptotic solution coincides with the GHZ spacing.
  return ghz_x0_analytic(n_qubits);
}

Minimum1d minimize_1d(const std::function<double(double)>& f, double lo,
                      double hi) {
  if (!(hi > lo)) throw std::invalid_argument("minimize_1d: empty bracket");
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kTol = 1e-6;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = check_finite(f(x1));
  double f2 = check_finite(f(x2));
  while (b - a > kTol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = check_finite(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = check_finite(f(x2));
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, check_finite(f(xm))};
}

namespace {

// Coarse grid then golden refinement around the best cell; handles profiles
// that are not unimodal over the full window.
Minimum1d minimize_grid_refine(const std::function<double(double)>& f,
                               double lo, double hi, int grid) {
  grid = std::max(grid, 5);
  int best_i = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> xs(grid);
  for (int i = 0; i < grid; ++i) {
    xs[i] = lo + (hi - lo) * i / (grid - 1);
    const double v = check_finite(f(xs[i]));
    if (v < best_val) {
      best_val = v;
      best_i = i;
    }
  }
  return minimize_1d(f, xs[std::max(0, best_i - 1)],
                     xs[std::min(grid - 1, best_i + 1)]);
}

}  // namespace

OptimumRecord minimize_2d(const std::function<double(double, double)>& f,
                          int n_qubits, const Bounds2d& bounds) {
  auto best_tau = [&](double x0) {
    return minimize_1d([&](double tau) { return f(tau, x0); }, bounds.tau_lo,
                       bounds.tau_hi);
  };
  const auto refined = minimize_grid_refine(
      [&](double x0) { return best_tau(x0).value; }, bounds.x0_lo, bounds.x0_hi,
      bounds.x0_grid);
  const auto inner = best_tau(refined.x);
  OptimumRecord rec;
  rec.n_qubits = n_qubits;
  rec.x0_opt = refined.x;
  rec.tau_opt = inner.x;
  rec.delta_b_opt = std::sqrt(inner.value);
  rec.method = OptimumRecord::Method::kNumeric;
  return rec;
}

SweepResult sweep_and_fit(SweepKind kind, const std::vector<int>& n_list,
                          const noise::NoiseParams& p, double total_time) {
  if (n_list.empty()) throw std::invalid_argument("sweep_and_fit: empty N list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("sweep_and_fit: N list must be ascending");
  p.validate();

  SweepResult out;
  for (int n : n_list) {
    OptimumRecord rec;
    switch (kind) {
      case SweepKind::kGhz: {
        // x0 from the spatial function, tau and value from the closed forms
        const auto x0 = minimize_grid_refine(
            [&](double x) { return f_n_direct(n, x, p); }, kX0Lo, kX0Hi, 161);
        const double f_min = f_n_direct(n, x0.x, p);
        rec.n_qubits = n;
        rec.x0_opt = x0.x;
        rec.tau_opt = ghz_optimal_time(f_min, p.omega_c);
        rec.delta_b_opt =
            ghz_time_optimized_uncertainty(f_min, p.omega_c, total_time, n);
        break;
      }
      case SweepKind::kOat: {
        const auto angles = oat::optimal_angles(n);
        // tau bracket scaled by the decay strength so the exponentials in
        // the lattice sums stay in range for strongly coupled spectra
        const double tau_hi =
            std::min(3.0, 3.0 / std::sqrt(p.kappa0_sq())) / p.omega_c;
        rec = minimize_2d(
            [&](double tau, double x0) {
              noise::LatticeGeometry gg{n, x0};
              const auto m = oat::moments_short_time(tau, gg, p, angles, 0.0);
              return estimators::ratio_uncertainty_moments(m, tau, total_time);
            },
            n, {1e-4 * tau_hi, tau_hi, kX0Lo, kX0Hi, 129});
        break;
      }
      case SweepKind::kCss: {
        // keep the bracket inside the short-time window: tau* ~ N^{-1/2}
        const double hi = std::min(
            1.0, 20.0 / (std::sqrt(p.kappa0_sq() * n) * p.omega_c)) /
            p.omega_c;
        const auto opt = minimize_1d(
            [&](double tau) {
              const double u = p.omega_c * tau;
              const double kap = p.kappa0_sq() * u * u;
              const double xi = p.xi0_cubed() * u * u * u;
              return estimators::css_uncertainties(tau, n, kap, xi, total_time)
                  .ratio;
            },
            1e-5 / p.omega_c, hi);
        rec.n_qubits = n;
        rec.x0_opt = 0.0;
        rec.tau_opt = opt.x;
        rec.delta_b_opt = std::sqrt(opt.value);
        break;
      }
    }
    out.records.push_back(rec);
  }

  // log-log least-squares fit of delta_b vs N
  const std::size_t m = out.records.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& r : out.records) {
    const double lx = std::log(static_cast<double>(r.n_qubits));
    const double ly = std::log(r.delta_b_opt);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double denom = m * sxx - sx * sx;
  out.fit.exponent = (m * sxy - sx * sy) / denom;
  out.fit.prefactor = std::exp((sy - out.fit.exponent * sx) / m);
  const double ss_res = syy - sy * sy / m -
                        out.fit.exponent * (sxy - sx * sy / m);
  const double ss_tot = syy - sy * sy / m;
  out.fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;

  for (const auto& r : out.records) {
    const double n = r.n_qubits;
    if (kind == SweepKind::kGhz)
      out.hl_constant += r.delta_b_opt * n *
                         std::sqrt(total_time / p.omega_c) /
                         std::sqrt(std::log(n));
    else if (kind == SweepKind::kOat)
      out.fixed_slope_prefactor += r.delta_b_opt * std::pow(n, 0.75);
    else
      out.fixed_slope_prefactor += r.delta_b_opt * std::pow(n, 0.25);
  }
  (kind == SweepKind::kGhz ? out.hl_constant : out.fixed_slope_prefactor) /= m;
  return out;
}

}  // namespace ramsense::optimize
