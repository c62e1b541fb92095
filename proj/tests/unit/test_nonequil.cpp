#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "densfluct/error.hpp"
#include "densfluct/nonequil_observables.hpp"
#include "densfluct/special_functions.hpp"
#include "doctest.h"
#include "support/synthetic_viscosity.hpp"

using namespace densfluct;
using namespace densfluct::nonequil;
using std::numbers::pi;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("kernel averages") {
  const Curve square = [](double q) { return q * q; };
  CHECK(kernel_average(SmearKernel::delta(1.7), square) == 1.7 * 1.7);
  CHECK(std::abs(kernel_average(SmearKernel::gaussian(0.0, 1.0), square) - 1.0) < 1e-8);
  const Curve linear = [](double q) { return 3.0 * q - 2.0; };
  CHECK(std::abs(kernel_average(SmearKernel::gaussian(0.4, 2.5), linear) - (3.0 * 0.4 - 2.0)) < 1e-10);
  CHECK(kernel_average(SmearKernel::empirical({{1.0, 0.25}, {3.0, 0.75}}), square) == doctest::Approx(7.0));

  SUBCASE("linear in the curve and in kernel mixtures") {
    const Curve f = [](double q) { return std::sin(q) + 0.1 * q * q; };
    const Curve g = [](double q) { return std::exp(-q * q); };
    const auto k = SmearKernel::gaussian(0.3, 0.7);
    const double lhs = kernel_average(k, [&](double q) { return 2.0 * f(q) - 0.5 * g(q); });
    CHECK(std::abs(lhs - (2.0 * kernel_average(k, f) - 0.5 * kernel_average(k, g))) < 1e-8 * std::abs(lhs) + 1e-12);
    const auto mix = SmearKernel::empirical({{-1.0, 0.3}, {0.5, 0.2}, {2.0, 0.5}});
    double by_parts = 0.0;
    for (const auto& [v, w] : std::vector<std::pair<double, double>>{{-1.0, 0.3}, {0.5, 0.2}, {2.0, 0.5}})
      by_parts += w * kernel_average(SmearKernel::delta(v), f);
    CHECK(kernel_average(mix, f) == doctest::Approx(by_parts).epsilon(1e-14));
  }

  SUBCASE("tabulated curves and domain errors") {
    const auto tab = tabulated_curve({0.0, 1.0, 2.0}, {0.0, 2.0, 2.0});
    CHECK(kernel_average(SmearKernel::delta(0.5), tab) == 1.0);
    CHECK(throws_kind(ErrorKind::DomainError, [&] { kernel_average(SmearKernel::gaussian(1.0, 0.5), tab); }));
    CHECK(throws_kind(ErrorKind::DomainError, [&] { kernel_average(SmearKernel::delta(3.0), tab); }));
  }

  CHECK_THROWS_AS(SmearKernel::gaussian(0.0, 0.0), Error);
  CHECK_THROWS_AS(SmearKernel::empirical({{1.0, 0.5}}), Error);
}

TEST_CASE("glass sigma") {
  const Curve linear = [](double t) { return 2.0 * t + 5.0; };
  for (double t : {100.0, 500.0, 999.0})
    CHECK(glass_sigma(t, linear, 1000.0, linear(1000.0), 0.1) == doctest::Approx(0.1 * 2.0 * t).epsilon(1e-12));
  const Curve unit = [](double t) { return t; };
  CHECK(glass_sigma(800.0, unit, 1000.0, 1000.0, 0.1) == doctest::Approx(80.0).epsilon(1e-14));
  CHECK(glass_sigma(800.0, unit, 1000.0, 1000.0, 0.0) == 0.0);
  CHECK(throws_kind(ErrorKind::OutOfRange, [&] { glass_sigma(1000.0, unit, 1000.0, 1000.0, 0.1); }));
}

TEST_CASE("viscosity law") {
  CHECK(viscosity_predict(1000.0, 1000.0, 0.08, 12.5) == 12.5);
  const double t = 2.0 / 3.0 * 1000.0;
  CHECK(collapse_abscissa(t, 1000.0, 0.08) == doctest::Approx(4.41942).epsilon(1e-6));
  const double ratio = viscosity_predict(t, 1000.0, 0.08, 1.0);
  CHECK(ratio == doctest::Approx(2.4e9).epsilon(0.05));
  CHECK(std::abs(ratio * boost::math::erfc(collapse_abscissa(t, 1000.0, 0.08)) - 1.0) < 1e-13);
  CHECK(std::abs(log10_viscosity_predict(t, 1000.0, 0.08, 1.0) - std::log10(ratio)) < 1e-12);
  // Far below the liquidus erfc underflows; the log form stays finite.
  CHECK(std::isfinite(log10_viscosity_predict(100.0, 1000.0, 0.02, 1.0)));
  double prev = std::numeric_limits<double>::infinity();
  for (double temp = 500.0; temp <= 1000.0; temp += 5.0) {
    const double eta = viscosity_predict(temp, 1000.0, 0.1, 1.0);
    CHECK(eta < prev);
    prev = eta;
  }
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { viscosity_predict(1001.0, 1000.0, 0.1, 1.0); }));
}

TEST_CASE("noiseless round trip recovers abar") {
  for (double abar : {0.05, 0.085, 0.12}) {
    const auto ds = testing::synthetic_dataset({{"x", 900.0, 10.0, abar}}, 30, 0.6, 0.0, 1);
    const auto fit = fit_liquid(ds.liquids[0]);
    CHECK(std::abs(fit.abar - abar) < 1e-10);
    CHECK(fit.residual_rms < 1e-6);
    CHECK_FALSE(fit.at_boundary);
  }
}

TEST_CASE("noisy round trip and collapse") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pick(0.05, 0.12);
  const double noise = 0.02;
  for (int trial = 0; trial < 20; ++trial) {
    const double abar = pick(rng);
    const testing::SyntheticLiquid liquid{"l" + std::to_string(trial), 600.0 + 40.0 * trial, 1.0 + trial, abar};
    const auto rec = testing::synthetic_record(liquid, 40, 0.6, noise, rng, 2);
    const auto fit = fit_liquid(rec);
    CHECK(std::abs(fit.abar / abar - 1.0) < 0.05);
    CHECK(fit.excluded_rows == 2);
    CHECK(fit.points.size() == 40);
    // Least squares cannot do worse than the true abar, whose misfit is the
    // realized noise.
    double ss = 0.0, injected = 0.0;
    for (const auto& p : fit.points) ss += std::pow(master_curve_residual(p), 2);
    for (const auto& row : rec.rows)
      if (!row.above_liquidus)
        injected += std::pow(std::log10(row.eta) - log10_viscosity_predict(row.temperature, liquid.t_liquidus, abar,
                                                                          liquid.eta_liquidus),
                             2);
    CHECK(std::sqrt(ss / fit.points.size()) <= std::sqrt(injected / fit.points.size()));
    CHECK(fit.residual_rms == doctest::Approx(std::sqrt(ss / fit.points.size())).epsilon(1e-9));
  }
}

TEST_CASE("collapse residual vanishes on noiseless liquids") {
  const auto ds = testing::synthetic_dataset({{"a", 700.0, 1.0, 0.06}, {"b", 1400.0, 100.0, 0.11}}, 25, 0.55, 0.0, 3);
  for (const auto& fit : fit_collapse(ds))
    for (const auto& p : fit.points) CHECK(std::abs(master_curve_residual(p)) < 1e-6);
}

TEST_CASE("fit failure modes") {
  auto rec = testing::synthetic_dataset({{"few", 900.0, 1.0, 0.1}}, 3, 0.6, 0.0, 1, 3).liquids[0];
  rec.rows.pop_back();
  rec.rows.erase(rec.rows.begin());
  CHECK(throws_kind(ErrorKind::InsufficientData, [&] { fit_liquid(rec); }));

  const auto steep = testing::synthetic_dataset({{"s", 900.0, 1.0, 0.02}}, 20, 0.8, 0.0, 1).liquids[0];
  const auto fit = fit_liquid(steep, {0.05, 1.0});
  CHECK(fit.at_boundary);
  CHECK_FALSE(fit.warning.empty());
  CHECK(fit.abar == doctest::Approx(0.05).epsilon(1e-5));
}

TEST_CASE("smeared Green's function") {
  SUBCASE("delta kernel is a single Lorentzian") {
    const double eps = 0.4, mu = 0.1, tau = 5.0, z = 0.8;
    std::vector<double> grid;
    for (int i = 0; i <= 4000; ++i) grid.push_back(-2.0 + i * 1e-3);
    const auto a = spectral_function(smeared_green(grid, eps, SmearKernel::delta(mu), z, tau));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > a[peak]) peak = i;
    CHECK(grid[peak] == doctest::Approx(eps - mu).epsilon(1e-9));
    CHECK(a[peak] == doctest::Approx(z * tau / pi).epsilon(1e-12));
    CHECK(full_width_half_max(grid, a) == doctest::Approx(2.0 / tau).epsilon(1e-4));
  }
  SUBCASE("sum rule") {
    for (const auto& k : {SmearKernel::delta(0.2), SmearKernel::gaussian(0.1, 0.3),
                          SmearKernel::empirical({{-0.5, 0.4}, {0.7, 0.6}})}) {
      const double z = 0.65;
      CHECK(std::abs(spectral_weight_numeric(0.3, k, z, 4.0, -std::numeric_limits<double>::infinity(),
                                             std::numeric_limits<double>::infinity()) -
                     z) < 1e-6);
      const double closed = spectral_weight_closed_form(0.3, k, z, 4.0, -3.0, 2.5);
      CHECK(std::abs(spectral_weight_numeric(0.3, k, z, 4.0, -3.0, 2.5) - closed) < 1e-6);
      CHECK(closed < z);
    }
  }
  SUBCASE("Gaussian-dominated width") {
    const double sigma = 1.0, tau = 200.0;
    std::vector<double> grid;
    for (int i = 0; i <= 1200; ++i) grid.push_back(-6.0 + i * 0.01);
    const auto a = spectral_function(smeared_green(grid, 0.0, SmearKernel::gaussian(0.0, sigma), 1.0, tau));
    CHECK(full_width_half_max(grid, a) == doctest::Approx(2.355 * sigma).epsilon(0.05));
  }
  CHECK_THROWS_AS(smeared_green({0.0}, 0.0, SmearKernel::delta(0.0), 1.5, 1.0), Error);
  CHECK_THROWS_AS(smeared_green({0.0}, 0.0, SmearKernel::delta(0.0), 1.0, 0.0), Error);
}

TEST_CASE("smeared Planck") {
  for (double nu : {0.01, 0.7, 3.0, 40.0}) {
    for (double t : {0.2, 1.0, 5.0}) {
      CHECK(smeared_planck(nu, SmearKernel::delta(t)) == planck_occupation(nu, t));
      CHECK(planck_occupation(nu, t) == 1.0 / std::expm1(nu / t));
      // The smearing shift is ~ (nu/T)^2 (sigma/T)^2 / 2, physical rather than
      // numerical, so the 1e-6 match holds for nu/T up to ~10.
      if (nu / t > 10.0) continue;
      const double narrow = smeared_planck(nu, SmearKernel::gaussian(t, 1e-4 * t));
      CHECK(std::abs(narrow / planck_occupation(nu, t) - 1.0) < 1e-6);
    }
  }
  double prev = 0.0;
  for (double mean = 0.5; mean <= 3.0; mean += 0.25) {
    const double v = smeared_planck(1.3, SmearKernel::gaussian(mean, 0.04));
    CHECK(v > prev);
    prev = v;
  }
  const double with_ptei = smeared_planck(1.0, SmearKernel::delta(2.0), 0.3, 0.5);
  CHECK(with_ptei == doctest::Approx(planck_occupation(1.0, 2.0) + 0.3 * planck_occupation(1.0, 0.5)));
  CHECK(throws_kind(ErrorKind::DomainError, [] { smeared_planck(1.0, SmearKernel::gaussian(0.1, 0.1)); }));
  CHECK_THROWS_AS(smeared_planck(0.0, SmearKernel::delta(1.0)), Error);
}

TEST_CASE("moment comparison") {
  const auto m1 = moment_compare(1, 0.7);
  CHECK(m1.arcsine == doctest::Approx(0.49).epsilon(1e-14));
  CHECK(m1.gaussian == doctest::Approx(0.49).epsilon(1e-14));
  const auto m2 = moment_compare(2, 2.0);
  CHECK(m2.arcsine == doctest::Approx(1.5 * 16).epsilon(1e-14));
  CHECK(m2.gaussian == doctest::Approx(3.0 * 16).epsilon(1e-14));
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (double sigma : {0.3, 1.0, 1.8}) {
    for (int g = 1; g <= 5; ++g) {
      // Arcsine law via e = sigma sqrt2 sin(phi), density d phi / pi.
      const double arc = GK::integrate([&](double phi) { return std::pow(sigma * std::sqrt(2.0) * std::sin(phi), 2 * g) / pi; },
                                       -pi / 2, pi / 2, 15, 1e-14);
      const double gauss = GK::integrate(
          [&](double e) { return std::pow(e, 2 * g) * std::exp(-0.5 * e * e / (sigma * sigma)) / (sigma * std::sqrt(2 * pi)); },
          -20 * sigma, 20 * sigma, 15, 1e-14);
      const auto m = moment_compare(g, sigma);
      CHECK(std::abs(m.arcsine / arc - 1.0) < 1e-8);
      CHECK(std::abs(m.gaussian / gauss - 1.0) < 1e-8);
    }
  }
  CHECK_THROWS_AS(moment_compare(0, 1.0), Error);
}
