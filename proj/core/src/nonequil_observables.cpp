#include "densfluct/nonequil_observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "densfluct/error.hpp"
#include "densfluct/special_functions.hpp"

namespace densfluct::nonequil {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr unsigned kMaxDepth = 30;

double gaussian_pdf(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

template <class F>
double integrate(F f, double a, double b, double rel_tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return GK::integrate(f, a, b, kMaxDepth, rel_tol);
}

// Integrates f over [a, b] with extra break points, so narrow features at
// known locations are never straddled by the first panel.
template <class F>
double integrate_split(F f, double a, double b, std::vector<double> breaks, double rel_tol) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi > lo) total += integrate(f, lo, hi, rel_tol);
  }
  return total;
}

}  // namespace

SmearKernel SmearKernel::delta(double at) {
  require(std::isfinite(at), ErrorKind::InvalidArgument, "delta location must be finite");
  return SmearKernel(DeltaKernel{at});
}

SmearKernel SmearKernel::gaussian(double mean, double sigma) {
  require(std::isfinite(mean), ErrorKind::InvalidArgument, "gaussian mean must be finite");
  require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::InvalidArgument, "gaussian sigma must be positive");
  return SmearKernel(GaussianKernel{mean, sigma});
}

SmearKernel SmearKernel::empirical(std::vector<WeightedPoint> points) {
  // Reuse the distribution validation: non-negative, normalized.
  const auto d = EnergyDistribution::empirical(points);
  (void)d;
  return SmearKernel(EmpiricalKernel{std::move(points)});
}

double SmearKernel::mean() const {
  return std::visit(Overloaded{[](const DeltaKernel& k) { return k.at; },
                               [](const GaussianKernel& k) { return k.mean; },
                               [](const EmpiricalKernel& k) {
                                 double m = 0.0;
                                 for (const auto& p : k.points) m += p.weight * p.value;
                                 return m;
                               }},
                    kind_);
}

std::pair<double, double> SmearKernel::support() const {
  return std::visit(
      Overloaded{[](const DeltaKernel& k) { return std::make_pair(k.at, k.at); },
                 [](const GaussianKernel& k) {
                   return std::make_pair(k.mean - kGaussianReach * k.sigma, k.mean + kGaussianReach * k.sigma);
                 },
                 [](const EmpiricalKernel& k) {
                   double lo = std::numeric_limits<double>::infinity();
                   double hi = -lo;
                   for (const auto& p : k.points)
                     if (p.weight > 0.0) {
                       lo = std::min(lo, p.value);
                       hi = std::max(hi, p.value);
                     }
                   return std::make_pair(lo, hi);
                 }},
      kind_);
}

Curve tabulated_curve(std::vector<double> x, std::vector<double> y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument, "need at least two (x, y) samples");
  require(std::is_sorted(x.begin(), x.end()), ErrorKind::InvalidArgument, "abscissae must be sorted");
  return [x = std::move(x), y = std::move(y)](double q) {
    if (!(q >= x.front() && q <= x.back())) return std::numeric_limits<double>::quiet_NaN();
    auto it = std::upper_bound(x.begin(), x.end(), q);
    if (it == x.end()) return y.back();
    const auto i = static_cast<std::size_t>(it - x.begin());
    const double t = (q - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
  };
}

double kernel_average(const SmearKernel& kernel, const Curve& curve, double rel_tol) {
  auto eval = [&](double q) {
    const double v = curve(q);
    require(std::isfinite(v), ErrorKind::DomainError, "curve undefined at q = " + std::to_string(q));
    return v;
  };
  return std::visit(Overloaded{[&](const DeltaKernel& k) { return eval(k.at); },
                               [&](const GaussianKernel& k) {
                                 const auto [lo, hi] = kernel.support();
                                 return integrate_split(
                                     [&](double q) { return gaussian_pdf(q, k.mean, k.sigma) * eval(q); }, lo, hi,
                                     {k.mean}, rel_tol);
                               },
                               [&](const EmpiricalKernel& k) {
                                 double s = 0.0;
                                 for (const auto& p : k.points)
                                   if (p.weight > 0.0) s += p.weight * eval(p.value);
                                 return s;
                               }},
                    kernel.kind());
}

double glass_sigma(double temperature, const Curve& eps_of_t, double t_melt, double eps_melt, double abar) {
  require(temperature > 0.0 && temperature < t_melt, ErrorKind::OutOfRange, "need 0 < T < T_melt");
  return abar * temperature * (eps_melt - eps_of_t(temperature)) / (t_melt - temperature);
}

double collapse_abscissa(double temperature, double t_melt, double abar) {
  require(temperature > 0.0, ErrorKind::OutOfRange, "temperature must be positive");
  require(abar > 0.0, ErrorKind::InvalidArgument, "abar must be positive");
  return (t_melt - temperature) / (abar * temperature * std::numbers::sqrt2);
}

double viscosity_predict(double temperature, double t_melt, double abar, double eta_melt) {
  require(temperature <= t_melt, ErrorKind::OutOfRange, "T above T_melt");
  return eta_melt / special::erfc(collapse_abscissa(temperature, t_melt, abar));
}

double log10_viscosity_predict(double temperature, double t_melt, double abar, double eta_melt) {
  require(temperature <= t_melt, ErrorKind::OutOfRange, "T above T_melt");
  return std::log10(eta_melt) -
         special::log_erfc(collapse_abscissa(temperature, t_melt, abar)) / std::numbers::ln10;
}

namespace {

double log_misfit(const ViscosityRecord& r, double abar) {
  double s = 0.0;
  for (const auto& row : r.rows) {
    if (row.above_liquidus) continue;
    const double d = log10_viscosity_predict(row.temperature, r.t_liquidus, abar, r.eta_liquidus) -
                     std::log10(row.eta);
    s += d * d;
  }
  return s;
}

// d(log_misfit)/d abar. d log10 eta / d abar = -2 x / (ln10 sqrt(pi) erfcx(x) abar),
// with erfcx(x) = e^{x^2} erfc(x); the x < 0 side is never reached (T <= T_l).
double log_misfit_slope(const ViscosityRecord& r, double abar) {
  double s = 0.0;
  for (const auto& row : r.rows) {
    if (row.above_liquidus) continue;
    const double d = log10_viscosity_predict(row.temperature, r.t_liquidus, abar, r.eta_liquidus) -
                     std::log10(row.eta);
    const double x = collapse_abscissa(row.temperature, r.t_liquidus, abar);
    s += 2.0 * d * (-2.0 * x / (std::numbers::ln10 * std::sqrt(std::numbers::pi) * special::erfcx(x) * abar));
  }
  return s;
}

}  // namespace

CollapseFit fit_liquid(const ViscosityRecord& record, AbarBounds bounds) {
  require(bounds.lo > 0.0 && bounds.hi > bounds.lo, ErrorKind::InvalidArgument, "need 0 < lo < hi");
  const std::size_t retained = record.retained_count();
  require(retained >= 3, ErrorKind::InsufficientData,
          "liquid `" + record.liquid_id + "` has " + std::to_string(retained) + " rows at or below T_liquidus");

  constexpr int kScan = 200;
  const double log_lo = std::log(bounds.lo);
  const double step = (std::log(bounds.hi) - log_lo) / (kScan - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double v = log_misfit(record, std::exp(log_lo + i * step));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = best == 0 ? bounds.lo : std::exp(log_lo + (best - 1) * step);
  const double b = best == kScan - 1 ? bounds.hi : std::exp(log_lo + (best + 1) * step);
  boost::uintmax_t iterations = 500;
  auto [abar, misfit] = boost::math::tools::brent_find_minima(
      [&](double x) { return log_misfit(record, x); }, a, b, std::numeric_limits<double>::digits, iterations);
  // The misfit is flat to rounding within ~sqrt(eps) of its minimum, so an
  // interior optimum is polished as a root of the analytic slope.
  const auto slope = [&](double x) { return log_misfit_slope(record, x); };
  if (const double sa = slope(a), sb = slope(b); sa < 0.0 && sb > 0.0) {
    iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        slope, a, b, sa, sb, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3),
        iterations);
    abar = 0.5 * (lo + hi);
    misfit = log_misfit(record, abar);
  }

  CollapseFit fit;
  fit.liquid_id = record.liquid_id;
  fit.abar = abar;
  fit.residual_rms = std::sqrt(misfit / static_cast<double>(retained));
  fit.excluded_rows = record.rows.size() - retained;
  const double edge = 1e-6;
  if (abar <= bounds.lo * (1.0 + edge) || abar >= bounds.hi * (1.0 - edge)) {
    fit.at_boundary = true;
    fit.warning = "optimum at the abar bound; widen the bounds or check the data";
  }
  for (const auto& row : record.rows) {
    if (row.above_liquidus) continue;
    fit.points.push_back({row.temperature, collapse_abscissa(row.temperature, record.t_liquidus, abar),
                          row.eta / record.eta_liquidus});
  }
  return fit;
}

std::vector<CollapseFit> fit_collapse(const ViscosityDataset& dataset, AbarBounds bounds) {
  std::vector<CollapseFit> out;
  out.reserve(dataset.liquids.size());
  for (const auto& rec : dataset.liquids) out.push_back(fit_liquid(rec, bounds));
  return out;
}

double master_curve_residual(const CollapsePoint& p) {
  return std::log10(p.y) + special::log_erfc(p.x) / std::numbers::ln10;
}

namespace {

std::complex<double> lorentzian_pole(double omega, double eps_k, double mu, double z, double tau) {
  return z / std::complex<double>(omega - eps_k + mu, 1.0 / tau);
}

std::complex<double> smeared_green_at(double omega, double eps_k, const SmearKernel& kernel, double z, double tau,
                                      double rel_tol) {
  return std::visit(
      Overloaded{[&](const DeltaKernel& k) { return lorentzian_pole(omega, eps_k, k.at, z, tau); },
                 [&](const GaussianKernel& k) {
                   const auto [lo, hi] = kernel.support();
                   const double pole = eps_k - omega;
                   const double w = 1.0 / tau;
                   const std::vector<double> breaks{k.mean, pole - 5.0 * w, pole, pole + 5.0 * w};
                   const double re = integrate_split(
                       [&](double mu) { return gaussian_pdf(mu, k.mean, k.sigma) * lorentzian_pole(omega, eps_k, mu, z, tau).real(); },
                       lo, hi, breaks, rel_tol);
                   const double im = integrate_split(
                       [&](double mu) { return gaussian_pdf(mu, k.mean, k.sigma) * lorentzian_pole(omega, eps_k, mu, z, tau).imag(); },
                       lo, hi, breaks, rel_tol);
                   return std::complex<double>(re, im);
                 },
                 [&](const EmpiricalKernel& k) {
                   std::complex<double> s = 0.0;
                   for (const auto& p : k.points) s += p.weight * lorentzian_pole(omega, eps_k, p.value, z, tau);
                   return s;
                 }},
      kernel.kind());
}

void check_green_inputs(double z, double tau) {
  require(z > 0.0 && z <= 1.0, ErrorKind::InvalidArgument, "Z must lie in (0, 1]");
  require(tau > 0.0, ErrorKind::InvalidArgument, "tau must be positive");
}

}  // namespace

std::vector<std::complex<double>> smeared_green(const std::vector<double>& omega_grid, double eps_k,
                                                const SmearKernel& kernel, double z_weight, double tau,
                                                double rel_tol) {
  check_green_inputs(z_weight, tau);
  require(std::is_sorted(omega_grid.begin(), omega_grid.end()), ErrorKind::InvalidArgument, "grid must be sorted");
  std::vector<std::complex<double>> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) out.push_back(smeared_green_at(w, eps_k, kernel, z_weight, tau, rel_tol));
  return out;
}

std::vector<double> spectral_function(const std::vector<std::complex<double>>& g) {
  std::vector<double> a;
  a.reserve(g.size());
  for (const auto& v : g) a.push_back(-v.imag() / std::numbers::pi);
  return a;
}

double spectral_weight_closed_form(double eps_k, const SmearKernel& kernel, double z_weight, double tau, double lo,
                                   double hi) {
  check_green_inputs(z_weight, tau);
  auto window = [&](double mu) {
    const double c = eps_k - mu;  // pole position
    return z_weight / std::numbers::pi * (std::atan((hi - c) * tau) - std::atan((lo - c) * tau));
  };
  return kernel_average(kernel, window, 1e-12);
}

double spectral_weight_numeric(double eps_k, const SmearKernel& kernel, double z_weight, double tau, double lo,
                               double hi) {
  check_green_inputs(z_weight, tau);
  auto a = [&](double w) {
    return -smeared_green_at(w, eps_k, kernel, z_weight, tau, 1e-10).imag() / std::numbers::pi;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  require(hi > lo, ErrorKind::InvalidArgument, "need lo < hi");
  const double centre = std::clamp(eps_k - kernel.mean(), lo, hi);
  if (std::isinf(lo) || std::isinf(hi)) {
    // Split at the peak so each half-line maps smoothly onto [0, 1).
    const double left = centre > lo ? GK::integrate(a, lo, centre, kMaxDepth, 1e-12) : 0.0;
    const double right = hi > centre ? GK::integrate(a, centre, hi, kMaxDepth, 1e-12) : 0.0;
    return left + right;
  }
  return integrate_split(a, lo, hi, {centre}, 1e-12);
}

double full_width_half_max(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 3, ErrorKind::InvalidArgument, "need at least three samples");
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double half = 0.5 * y[peak];
  std::size_t l = peak;
  while (l > 0 && y[l] > half) --l;
  std::size_t r = peak;
  while (r + 1 < y.size() && y[r] > half) ++r;
  require(y[l] <= half && y[r] <= half, ErrorKind::DomainError, "half-maximum crossing outside the grid");
  auto cross = [&](std::size_t a, std::size_t b) { return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]); };
  return cross(r - 1, r) - cross(l, l + 1);
}

double planck_occupation(double nu, double temperature) {
  require(nu > 0.0, ErrorKind::InvalidArgument, "frequency must be positive");
  require(temperature > 0.0, ErrorKind::DomainError, "temperature must be positive");
  return 1.0 / std::expm1(nu / temperature);
}

double smeared_planck(double nu, const SmearKernel& kernel, double ptei_weight, double ptei_temperature,
                      double rel_tol) {
  require(nu > 0.0, ErrorKind::InvalidArgument, "frequency must be positive");
  require(ptei_weight >= 0.0 && ptei_weight <= 1.0, ErrorKind::InvalidArgument, "PTEI weight must lie in [0, 1]");
  require(kernel.support().first > 0.0, ErrorKind::DomainError, "temperature kernel reaches T <= 0");
  const double smeared = kernel_average(kernel, [nu](double t) { return planck_occupation(nu, t); }, rel_tol);
  if (ptei_weight == 0.0) return smeared;
  return smeared + ptei_weight * planck_occupation(nu, ptei_temperature);
}

MomentPair moment_compare(int g, double sigma) {
  require(g >= 1, ErrorKind::InvalidArgument, "g must be a positive integer");
  require(sigma > 0.0, ErrorKind::InvalidArgument, "sigma must be positive");
  double binom = 1.0;       // C(2g, g)
  double double_fact = 1.0;  // (2g-1)!! = (2g)! / (2^g g!)
  for (int k = 1; k <= g; ++k) {
    binom = binom * (g + k) / k;
    double_fact *= 2.0 * k - 1.0;
  }
  const double s2 = sigma * sigma;
  return {binom * std::pow(0.5 * s2, g), double_fact * std::pow(s2, g)};
}

}  // namespace densfluct::nonequil
