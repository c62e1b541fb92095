#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "densfluct/collective_spin.hpp"
#include "densfluct/error.hpp"
#include "doctest.h"

using namespace densfluct;
using namespace densfluct::collective;
using std::numbers::pi;

namespace {

// Dense (2S+1) spin matrices in ascending-m order; independent of the
// tridiagonal code paths under test.
struct SpinMatrices {
  Eigen::MatrixXd sz, sx, sy_imag;  // S_y = i * sy_imag
};

SpinMatrices spin_matrices(int twice_s) {
  const int dim = twice_s + 1;
  const double s = 0.5 * twice_s;
  SpinMatrices out{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
  for (int k = 0; k < dim; ++k) {
    const double m = -s + k;
    out.sz(k, k) = m;
    if (k + 1 < dim) {
      const double c = std::sqrt(s * (s + 1) - m * (m + 1));  // <m+1|S+|m>
      out.sx(k + 1, k) = out.sx(k, k + 1) = 0.5 * c;
      // S_y = (S+ - S-)/(2i): <m+1|S_y|m> = -i c/2
      out.sy_imag(k + 1, k) = -0.5 * c;
      out.sy_imag(k, k + 1) = 0.5 * c;
    }
  }
  return out;
}

// Column m of exp(-i theta S_y) = exp(theta * sy_imag), via Eigen's dense
// matrix exponential.
Eigen::VectorXd dense_wigner_column(int twice_s, int twice_m, double theta) {
  const auto sm = spin_matrices(twice_s);
  const Eigen::MatrixXd rot = (theta * sm.sy_imag).exp();
  return rot.col((twice_m + twice_s) / 2);
}

// <(Delta E)^p> of B_z-scaled rotated S_z in |S, m> by dense matrix powers.
double dense_moment(int twice_s, int twice_m, double theta, int p) {
  const auto sm = spin_matrices(twice_s);
  const int dim = twice_s + 1;
  const Eigen::MatrixXd x =
      std::cos(theta) * (sm.sz - 0.5 * twice_m * Eigen::MatrixXd::Identity(dim, dim)) + std::sin(theta) * sm.sx;
  const Eigen::MatrixXd dh = -x;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v((twice_m + twice_s) / 2) = 1.0;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim, dim);
  for (int i = 0; i < p; ++i) power = power * dh;
  return v.dot(power * v);
}

}  // namespace

TEST_CASE("analytic_sigma closed-form examples") {
  const auto rot = DriveSchedule::rotation(pi / 2, 1.0);
  const SpinSector m0(4, HalfInt(4), HalfInt(0));
  CHECK(analytic_sigma(m0, rot, pi / 2) == doctest::Approx(std::sqrt(1.5) / (2 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(analytic_sigma(m0, rot, pi / 2) == doctest::Approx(0.433013).epsilon(1e-6));
  CHECK(analytic_sigma(SpinSector(4, HalfInt(4), HalfInt(4)), rot, pi / 2) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(analytic_sigma(m0, rot, 0.0) == 0.0);
}

TEST_CASE("analytic_sigma errors") {
  const auto rot = DriveSchedule::rotation(1.0, 1.0);
  try {
    analytic_sigma(SpinSector(2, HalfInt(0), HalfInt(0)), rot, 1.0);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedSpinRatio);
  }
  const DriveSchedule two(DriveMode::Augment, {{1.0, 1.0}, {1.0, 0.5}}, 1.0);
  try {
    analytic_sigma(SpinSector::dicke(4, HalfInt(0)), two, 1.0);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedSchedule);
  }
}

TEST_CASE("analytic_energy_mean examples") {
  const SpinSector s(4, HalfInt(4), HalfInt(4));
  CHECK(analytic_energy_mean(s, DriveSchedule::rotation(1.0, 1.0), 0.0, -0.75) == doctest::Approx((-0.75 - 2.0) / 4));
  const double before = analytic_energy_mean(s, DriveSchedule::rotation(pi, 1.0), 0.0, 0.0);
  const double after = analytic_energy_mean(s, DriveSchedule::rotation(pi, 1.0), pi, 0.0);
  CHECK(after - before == doctest::Approx(1.0).epsilon(1e-14));
  const SpinSector m1(4, HalfInt(4), HalfInt(2));
  CHECK(std::abs(analytic_energy_mean(m1, DriveSchedule::rotation(pi / 2, 1.0), pi / 2, 0.0)) < 1e-15);
}

TEST_CASE("central_moment asymptotic law") {
  const SpinSector s(10, HalfInt(10), HalfInt(2));
  const auto rot = DriveSchedule::rotation(0.9, 1.3);
  const double sigma = analytic_sigma(s, rot, 0.9);
  CHECK(central_moment(s, rot, 0.9, 1, MomentMethod::Asymptotic) == doctest::Approx(sigma * sigma).epsilon(1e-14));
  CHECK(central_moment(s, rot, 0.9, 2, MomentMethod::Asymptotic) == doctest::Approx(1.5 * std::pow(sigma, 4)).epsilon(1e-14));
  CHECK_THROWS_AS(central_moment(s, rot, 0.9, 0, MomentMethod::Exact), Error);
}

TEST_CASE("exact central moments: the S=1, m=0, theta=pi/2 example in global units") {
  const SpinSector s(2, HalfInt(2), HalfInt(0));
  CHECK(exact_central_moment(s, pi / 2, 1.0, 2, EnergyScale::Global) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(exact_central_moment(s, pi / 2, 1.0, 4, EnergyScale::Global) == doctest::Approx(1.0).epsilon(1e-14));
  // Per-site values are those divided by N^p.
  CHECK(exact_central_moment(s, pi / 2, 1.0, 4) == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("exact central moments agree with dense matrix powers") {
  for (int twice_s : {1, 2, 5, 8, 13}) {
    for (int twice_m = -twice_s; twice_m <= twice_s; twice_m += 2) {
      const SpinSector sector(twice_s, HalfInt(twice_s), HalfInt(twice_m));
      for (double theta : {0.3, 1.1, 2.7}) {
        for (int p = 1; p <= 6; ++p) {
          const double want = dense_moment(twice_s, twice_m, theta, p) * std::pow(0.8, p);
          const double got = exact_central_moment(sector, theta, 0.8, p, EnergyScale::Global);
          CHECK(got == doctest::Approx(want).epsilon(1e-11).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("exact g=1 moment equals sigma^2 for every S") {
  for (int twice_s : {1, 2, 7, 40, 401}) {
    const SpinSector s(twice_s, HalfInt(twice_s), HalfInt(twice_s % 2));
    const auto rot = DriveSchedule::rotation(1.2, 1.0);
    const double ratio = central_moment(s, rot, 1.2, 1, MomentMethod::Exact) /
                         central_moment(s, rot, 1.2, 1, MomentMethod::Asymptotic);
    CHECK(std::abs(ratio - 1.0) < 1e-12);
  }
}

TEST_CASE("exact/asymptotic moment ratio approaches 1 with S") {
  for (int g : {2, 3}) {
    double previous = 1e9;
    for (int twice_s : {20, 200, 2000}) {
      const SpinSector s(twice_s, HalfInt(twice_s), HalfInt(0));
      const auto rot = DriveSchedule::rotation(pi / 3, 1.0);
      const double gap = std::abs(central_moment(s, rot, pi / 3, g, MomentMethod::Exact) /
                                      central_moment(s, rot, pi / 3, g, MomentMethod::Asymptotic) -
                                  1.0);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 0.01);
  }
}

TEST_CASE("odd central moments vanish for m = 0 and for cos(theta) = 0") {
  for (int twice_s : {2, 6, 30}) {
    const SpinSector s(twice_s, HalfInt(twice_s), HalfInt(0));
    for (int p : {1, 3, 5}) CHECK(std::abs(exact_central_moment(s, 0.77, 1.0, p)) < 1e-12);
    const SpinSector sm(twice_s, HalfInt(twice_s), HalfInt(2));
    for (int p : {1, 3, 5}) CHECK(std::abs(exact_central_moment(sm, pi / 2, 1.0, p)) < 1e-12);
  }
  // Away from those cases the third moment is not zero: S = 1/2, m = 1/2 gives
  // B_z^3 cos(theta) sin^2(theta) / 4 in global units.
  const SpinSector half(1, HalfInt(1), HalfInt(1));
  const double theta = 0.6;
  CHECK(exact_central_moment(half, theta, 1.0, 3, EnergyScale::Global) ==
        doctest::Approx(std::cos(theta) * std::pow(std::sin(theta), 2) / 4).epsilon(1e-13));
}

TEST_CASE("characteristic function") {
  CHECK(characteristic_value(0.0, 0.3) == 1.0);
  const double sigma = 0.4, q = 1e-3;
  CHECK(std::abs(characteristic_value(q, sigma) - (1 - q * q * sigma * sigma / 2)) < 1e-12);
  // First J0 root located by bisection on an independent power series.
  auto series = [](double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -(x * x / 4) / (double(k) * k);
      sum += term;
    }
    return sum;
  };
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (series(mid) > 0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  CHECK(std::abs(characteristic_value(root / (sigma * std::sqrt(2.0)), sigma)) < 1e-10);
}

TEST_CASE("arcsine density and CDF") {
  CHECK(arcsine_density(0.0, 0.0, 1.0) == doctest::Approx(1.0 / (pi * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(arcsine_density(0.2 + 1.5, 0.2, 1.0) == 0.0);
  CHECK(arcsine_density(0.2 - 1.5, 0.2, 1.0) == 0.0);
  CHECK_THROWS_AS(arcsine_density(0.0, 0.0, 0.0), Error);
  // Substituting e = c + r sin(phi) removes the edge singularities; one
  // 61-point panel keeps every node away from the edge rounding.
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double c = 0.3, w = 0.7;
  const double r = w * std::sqrt(2.0);
  auto mass = [&](double phi_hi) {
    return GK::integrate([&](double phi) { return arcsine_density(c + r * std::sin(phi), c, w) * r * std::cos(phi); },
                         -pi / 2, phi_hi, 0, 1e-14);
  };
  CHECK(std::abs(mass(pi / 2) - 1.0) < 1e-10);
  CHECK(arcsine_cdf(c, c, w) == doctest::Approx(0.5));
  CHECK(arcsine_cdf(c - 2 * r, c, w) == 0.0);
  CHECK(arcsine_cdf(c + 2 * r, c, w) == 1.0);
  const double x = c + 0.4 * r;
  const double partial = mass(std::asin(0.4));
  CHECK(std::abs(arcsine_cdf(x, c, w) - partial) < 1e-10);
}

TEST_CASE("Wigner column agrees with dense matrix exponential") {
  for (int twice_s : {1, 2, 3, 8, 21}) {
    for (int twice_m = -twice_s; twice_m <= twice_s; twice_m += 2) {
      for (double theta : {0.1, 1.3, -2.2, 5.9}) {
        const auto got = wigner_column(HalfInt(twice_s), HalfInt(twice_m), theta);
        const Eigen::VectorXd want = dense_wigner_column(twice_s, twice_m, theta);
        for (int k = 0; k <= twice_s; ++k) CHECK(std::abs(got[k] - want(k)) < 1e-12);
      }
    }
  }
  // Closed-form spin-1 elements.
  const double t = 0.8;
  const auto col = wigner_column(HalfInt(2), HalfInt(2), t);  // m = 1
  CHECK(col[2] == doctest::Approx((1 + std::cos(t)) / 2).epsilon(1e-14));
  CHECK(col[1] == doctest::Approx(std::sin(t) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(col[0] == doctest::Approx((1 - std::cos(t)) / 2).epsilon(1e-14));
}

TEST_CASE("eigenweight distribution examples") {
  const SpinSector s(4, HalfInt(4), HalfInt(2));
  const auto point = eigenweight_distribution(s, 0.0);
  int nonzero = 0;
  for (const auto& p : point.points().points) nonzero += p.weight > 0.0;
  CHECK(nonzero == 1);
  CHECK(point.mean() == doctest::Approx(-1.0 / 4));

  const auto half = eigenweight_distribution(SpinSector(1, HalfInt(1), HalfInt(1)), pi / 2);
  REQUIRE(half.points().points.size() == 2);
  CHECK(half.points().points[0].weight == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.points().points[1].weight == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("eigenweight mean and width match the closed forms for S <= 200") {
  for (int twice_s : {1, 4, 9, 60, 400}) {
    for (int twice_m : {-twice_s, twice_s % 2, twice_s - 2}) {
      const SpinSector sector(twice_s, HalfInt(twice_s), HalfInt(twice_m));
      for (double theta : {0.25, 1.0, 2.0, 3.0}) {
        const auto rot = DriveSchedule::rotation(theta, 1.7);
        const auto d = eigenweight_distribution(sector, theta, 1.7, -0.3);
        CHECK(std::abs(d.mean() - analytic_energy_mean(sector, rot, theta, -0.3)) < 1e-12);
        CHECK(std::abs(d.stddev() - analytic_sigma(sector, rot, theta)) < 1e-10);
      }
    }
  }
}

TEST_CASE("KS distance to the arcsine law shrinks with S at fixed w") {
  double previous = 1.0;
  for (int s : {10, 40, 160, 640}) {
    const int twice_s = 2 * s;
    const int twice_m = s;  // w = 1/2
    const SpinSector sector(twice_s, HalfInt(twice_s), HalfInt(twice_m));
    const double theta = 1.1;
    const auto rot = DriveSchedule::rotation(theta, 1.0);
    const auto d = eigenweight_distribution(sector, theta);
    const double ks = ks_distance_to_arcsine(d.points(), analytic_energy_mean(sector, rot, theta, 0.0),
                                             analytic_sigma(sector, rot, theta));
    CHECK(ks < previous);
    previous = ks;
  }
}

TEST_CASE("sigma vanishes at t_k = k pi / b_y under a constant field") {
  const SpinSector s(6, HalfInt(6), HalfInt(2));
  const double b_y = 0.7;
  const auto sched = DriveSchedule::constant(DriveMode::Replace, b_y, 100.0, 1.0);
  for (int k = 1; k <= 5; ++k) {
    CHECK(analytic_sigma(s, sched, sigma_zero_time(k, b_y)) < 1e-14);
    CHECK(analytic_sigma(s, sched, sigma_zero_time(k, b_y) + 0.5) > 0.05);
  }
}
