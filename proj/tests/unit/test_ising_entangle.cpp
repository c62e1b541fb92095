#include <cmath>
#include <random>
#include <vector>

#include "densfluct/error.hpp"
#include "densfluct/exact_arith.hpp"
#include "densfluct/ising_entangle.hpp"
#include "doctest.h"

using namespace densfluct;
using namespace densfluct::ising;
using exact::BigInt;
using exact::Rational;

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

}  // namespace

TEST_CASE("domain-wall correlator examples") {
  using M = CorrelatorMethod;
  CHECK(domain_wall_correlator({2, 0, 1.0}, 1, M::ExactEnumeration) == 1.0);
  CHECK(domain_wall_correlator({2, 0, 1.0}, 1, M::ExactHypergeometric) == 1.0);
  const DomainWallEnsemble three{3, 1, 1.0};
  CHECK(domain_wall_correlator(three, 1, M::ExactEnumeration) == 0.0);
  CHECK(domain_wall_correlator(three, 2, M::ExactEnumeration) == -1.0);
  CHECK(domain_wall_correlator(three, 1, M::Asymptotic) == 0.0);
  CHECK(domain_wall_correlator(three, 2, M::Asymptotic) == 0.0);
  CHECK(domain_wall_correlator({100, 30, 1.0}, 2, M::Asymptotic) ==
        doctest::Approx(39.0 * 39.0 / (99.0 * 99.0)).epsilon(1e-15));
  CHECK(std::abs(domain_wall_correlator({100, 30, 1.0}, 2, M::ExactHypergeometric) - 0.155188) < 0.05);
  CHECK_THROWS_AS(domain_wall_correlator({5, 1, 1.0}, 0, M::ExactHypergeometric), Error);
}

TEST_CASE("domain-wall validation") {
  CHECK_THROWS_AS(DomainWallEnsemble(1, 0, 1.0), Error);
  CHECK_THROWS_AS(DomainWallEnsemble(4, 4, 1.0), Error);
  CHECK_THROWS_AS(domain_wall_correlator({5, 1, 1.0}, 5, CorrelatorMethod::ExactHypergeometric), Error);
  CHECK_THROWS_AS(domain_wall_correlator({5, 1, 1.0}, -1, CorrelatorMethod::Asymptotic), Error);
  CHECK_THROWS_AS(correlator_enumerated({kMaxEnumerationLength + 1, 2, 1.0}, 1), Error);
}

TEST_CASE("enumeration equals the hypergeometric sum exactly for L <= 14") {
  for (int l = 2; l <= 14; ++l)
    for (int k = 0; k <= l - 1; ++k)
      for (int d = 1; d < l; ++d) {
        const DomainWallEnsemble e{l, k, 1.0};
        CHECK(correlator_enumerated(e, d) == correlator_hypergeometric(e, d));
      }
}

TEST_CASE("asymptotic error halves as L doubles at fixed wall density") {
  for (int d : {1, 2, 3}) {
    double prev = 0.0;
    for (int l : {40, 80, 160, 320}) {
      const int b = l - 1;
      const DomainWallEnsemble e{l, static_cast<int>(std::lround(0.25 * b)), 1.0};
      const double diff = std::abs(domain_wall_correlator(e, d, CorrelatorMethod::Asymptotic) -
                                   domain_wall_correlator(e, d, CorrelatorMethod::ExactHypergeometric));
      if (prev > 0.0) CHECK(std::abs(prev / diff / 2.0 - 1.0) < 0.3);
      prev = diff;
    }
  }
}

TEST_CASE("thermal correlator at the matched temperature tracks the exact value within O(1/L)") {
  const double j = 0.7;
  for (int l : {20, 40, 80, 160, 320}) {
    for (double density : {0.1, 0.3}) {
      const DomainWallEnsemble e{l, static_cast<int>(std::lround(density * (l - 1))), j};
      const double beta = thermo_from_energy(l, j, e.energy()).beta;
      for (int d : {1, 2, 4}) {
        const double thermal = domain_wall_correlator(e, d, CorrelatorMethod::Thermal, beta);
        CHECK(thermal == doctest::Approx(domain_wall_correlator(e, d, CorrelatorMethod::Asymptotic)).epsilon(1e-12));
        const double exact = domain_wall_correlator(e, d, CorrelatorMethod::ExactHypergeometric);
        CHECK(std::abs(thermal - exact) <= static_cast<double>(d * d) / l);
      }
    }
  }
}

TEST_CASE("temperature-energy maps") {
  CHECK(thermo_from_energy(10, 1.0, 0.0).beta == 0.0);
  CHECK(thermo_from_beta(10, 1.0, 0.0).heat_capacity == 0.0);
  CHECK(thermo_from_beta(10, 1.0, 40.0).energy == doctest::Approx(-9.0).epsilon(1e-14));
  CHECK(std::isinf(thermo_from_energy(10, 1.0, -9.0).beta));
  CHECK_THROWS_AS(thermo_from_energy(10, 1.0, 9.5), Error);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int i = 0; i < 100; ++i) {
    const double e = 15.0 * 1.3 * u(rng);
    const auto p = thermo_from_energy(16, 1.3, e);
    CHECK(std::abs(thermo_from_beta(16, 1.3, p.beta).energy - e) <= 1e-12 * std::max(1.0, std::abs(e)));
  }
  // C_v = L((bJ)^2 - (bE/L)^2)
  const auto p = thermo_from_beta(8, 0.5, 1.2);
  CHECK(p.heat_capacity == doctest::Approx(8 * (0.36 - std::pow(1.2 * p.energy / 8, 2))));
}

TEST_CASE("Dicke entanglement") {
  CHECK(dicke_entanglement({2, HalfInt(0), 1}, EntropyMethod::Exact) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(dicke_entanglement({4, HalfInt(0), 2}, EntropyMethod::Exact) - 0.867563) < 1e-6);
  const double want = -(2.0 / 6.0) * std::log(1.0 / 6.0) - (2.0 / 3.0) * std::log(2.0 / 3.0);
  CHECK(std::abs(dicke_entanglement({4, HalfInt(0), 2}, EntropyMethod::Exact) - want) < 1e-9);
  CHECK(dicke_entanglement({4, HalfInt(4), 2}, EntropyMethod::Exact) == 0.0);

  for (int n : {7, 12, 20}) {
    for (int twice_m = -n; twice_m <= n; twice_m += 2) {
      for (int la = 1; la < n; ++la) {
        const double a = dicke_entanglement({n, HalfInt(twice_m), la}, EntropyMethod::Exact);
        CHECK(a >= 0.0);
        CHECK(a == dicke_entanglement({n, HalfInt(twice_m), n - la}, EntropyMethod::Exact));
        CHECK(a == dicke_entanglement({n, HalfInt(-twice_m), la}, EntropyMethod::Exact));
      }
    }
  }

  std::vector<double> ln_n, s;
  for (int n = 16; n <= 1024; n *= 2) {
    ln_n.push_back(std::log(n));
    s.push_back(dicke_entanglement({n, HalfInt(0), n / 2}, EntropyMethod::Exact));
  }
  CHECK(std::abs(slope(ln_n, s) - 0.5) < 0.1);

  const DickeSplit big{1024, HalfInt(0), 512};
  CHECK(dicke_saddle_variance(big) == doctest::Approx(512.0 * 512.0 / (4 * 1024)));
  // The saddle form (1/2) ln(2 pi s^2 + 1) omits the e of a Gaussian's
  // differential entropy, so it sits half a nat below the exact value.
  CHECK(std::abs(dicke_entanglement(big, EntropyMethod::Exact) - dicke_entanglement(big, EntropyMethod::Saddle) - 0.5) <
        0.01);
  CHECK_THROWS_AS(DickeSplit(4, HalfInt(0), 4), Error);
  CHECK_THROWS_AS(DickeSplit(4, HalfInt(1), 2), Error);
}

TEST_CASE("wall-state entanglement equals Dicke entanglement of the bond variables") {
  CHECK(ising_wall_entanglement({8, 0, 1.0}, 4) == 0.0);
  for (int l = 4; l <= 30; l += 3)
    for (int k = 0; k < l; ++k)
      for (int la = 1; la < l - 1; ++la) {
        const int b = l - 1;
        const double dicke = dicke_entanglement({b, HalfInt(2 * k - b), la}, EntropyMethod::Exact);
        CHECK(std::abs(ising_wall_entanglement({l, k, 1.0}, la) - dicke) < 1e-13);
      }
  CHECK_THROWS_AS(ising_wall_entanglement({12, 4, 1.0}, 0), Error);
}

TEST_CASE("total-spin multiplicities") {
  CHECK(spin_multiplicity_exact(4, HalfInt(4)) == 1);
  CHECK(spin_multiplicity_exact(4, HalfInt(2)) == 3);
  CHECK(spin_multiplicity_exact(4, HalfInt(0)) == 2);
  CHECK(spin_multiplicity_exact(3, HalfInt(3)) == 1);
  CHECK(spin_multiplicity_exact(3, HalfInt(1)) == 2);
  CHECK(spin_multiplicity_exact(2, HalfInt(2)) == 1);
  CHECK(spin_multiplicity_exact(2, HalfInt(0)) == 1);
  CHECK_THROWS_AS(spin_multiplicity_exact(4, HalfInt(1)), Error);
  CHECK_THROWS_AS(spin_multiplicity_exact(4, HalfInt(6)), Error);

  for (int n = 1; n <= 64; ++n) {
    BigInt total = 0;
    for (int twice_s = n % 2; twice_s <= n; twice_s += 2) total += spin_multiplicity_exact(n, HalfInt(twice_s)) * (twice_s + 1);
    CHECK(total == (BigInt(1) << n));
  }
}

TEST_CASE("Gaussian multiplicity approaches the exact count at large N") {
  const int n = 10000;
  for (double c : {0.5, 1.0, 2.0}) {
    const int twice_s = 2 * static_cast<int>(std::lround(c * std::sqrt(n)));
    CHECK(std::abs(multiplicity_gaussian_ratio(n, HalfInt(twice_s)) - 1.0) < 0.05);
    CHECK(spin_multiplicity_log_gaussian(n, HalfInt(twice_s)) ==
          doctest::Approx(exact::log(spin_multiplicity_exact(n, HalfInt(twice_s)))).epsilon(0.01));
  }
}
