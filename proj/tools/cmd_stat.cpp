#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "densfluct/error.hpp"
#include "densfluct/ising_entangle.hpp"
#include "densfluct/nonequil_observables.hpp"
#include "run.hpp"

namespace densfluct::cli {

namespace {

using namespace densfluct::ising;

// ---- ising-corr -------------------------------------------------------------

struct IsingArgs {
  int l = 40;
  int k = 10;
  double j = 1.0;
  int d_max = 0;
};

void ising_selftest(Run& run) {
  using M = CorrelatorMethod;
  run.check("L2_k0_d1", domain_wall_correlator({2, 0, 1.0}, 1, M::ExactEnumeration), 1.0, 0.0);
  run.check("L3_k1_d1", domain_wall_correlator({3, 1, 1.0}, 1, M::ExactEnumeration), 0.0, 0.0);
  run.check("L3_k1_d2", domain_wall_correlator({3, 1, 1.0}, 2, M::ExactEnumeration), -1.0, 0.0);
  run.check("L100_k30_d2_asymptotic", domain_wall_correlator({100, 30, 1.0}, 2, M::Asymptotic),
            39.0 * 39.0 / (99.0 * 99.0), 1e-15);
  bool same = true;
  for (int l = 2; l <= 10; ++l)
    for (int k = 0; k < l; ++k)
      for (int d = 1; d < l; ++d)
        same &= correlator_enumerated({l, k, 1.0}, d) == correlator_hypergeometric({l, k, 1.0}, d);
  run.check("enumeration_equals_hypergeometric_L10", same);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double e = 19.0 * u(rng);
    worst = std::max(worst, std::abs(thermo_from_beta(20, 1.0, thermo_from_energy(20, 1.0, e).beta).energy - e));
  }
  run.check("energy_beta_round_trip", worst, 0.0, 1e-12 * 19.0);
  run.check("zero_energy_infinite_temperature", thermo_from_energy(20, 1.0, 0.0).beta, 0.0, 0.0);
}

std::function<void(Run&)> ising_corr(Options& o) {
  auto a = std::make_shared<IsingArgs>();
  o.add("l", a->l, "Chain length L");
  o.add("k", a->k, "Domain-wall count");
  o.add("j", a->j, "Ising coupling J");
  o.add("d-max", a->d_max, "Largest distance (0: min(10, L-1))");
  return [a](Run& run) {
    if (run.selftest()) return ising_selftest(run);
    const DomainWallEnsemble e{a->l, a->k, a->j};
    const int d_max = a->d_max == 0 ? std::min(10, a->l - 1) : a->d_max;
    require(d_max >= 1 && d_max <= a->l - 1, ErrorKind::OutOfRange, "need 1 <= d-max <= L-1");
    const auto thermo = thermo_from_energy(a->l, a->j, e.energy());
    auto& t = run.table("", {"d", "enumeration", "hypergeometric", "asymptotic", "thermal"});
    for (int d = 1; d <= d_max; ++d) {
      const std::string enumerated =
          a->l <= kMaxEnumerationLength
              ? format_double(domain_wall_correlator(e, d, CorrelatorMethod::ExactEnumeration))
              : std::string();
      t.row(d, enumerated, domain_wall_correlator(e, d, CorrelatorMethod::ExactHypergeometric),
            domain_wall_correlator(e, d, CorrelatorMethod::Asymptotic),
            domain_wall_correlator(e, d, CorrelatorMethod::Thermal, thermo.beta));
    }
    run.json("", Json{{"energy", e.energy()},
                      {"beta", std::isinf(thermo.beta) ? Json(thermo.beta > 0 ? "inf" : "-inf") : Json(thermo.beta)},
                      {"heat_capacity", thermo.heat_capacity}});
  };
}

// ---- dicke-entropy ----------------------------------------------------------

struct DickeArgs {
  int n = 16;
  std::string m = "0";
  int la = 0;
};

std::function<void(Run&)> dicke_entropy(Options& o) {
  auto a = std::make_shared<DickeArgs>();
  o.add("n", a->n, "Number of sites N");
  o.add("m", a->m, "Magnetisation m; accepts k/2");
  o.add("la", a->la, "Left block size L_A (0 sweeps 1..N-1)");
  return [a](Run& run) {
    if (run.selftest()) {
      run.check("N2_ln2", dicke_entanglement({2, HalfInt(0), 1}, EntropyMethod::Exact), std::log(2.0), 1e-15);
      run.check("N4_m0_LA2", dicke_entanglement({4, HalfInt(0), 2}, EntropyMethod::Exact), 0.867563, 1e-6);
      run.check("N4_m0_LA2_closed_form", dicke_entanglement({4, HalfInt(0), 2}, EntropyMethod::Exact),
                -(1.0 / 3.0) * std::log(1.0 / 6.0) - (2.0 / 3.0) * std::log(2.0 / 3.0), 1e-9);
      bool symmetric = true;
      for (int la = 1; la < 11; ++la)
        for (int tm = -11; tm <= 11; tm += 2)
          symmetric &= dicke_entanglement({11, HalfInt(tm), la}, EntropyMethod::Exact) ==
                           dicke_entanglement({11, HalfInt(-tm), 11 - la}, EntropyMethod::Exact);
      run.check("block_and_sign_symmetry", symmetric);
      std::vector<double> x, y;
      for (int n = 16; n <= 1024; n *= 2) {
        x.push_back(std::log(n));
        y.push_back(dicke_entanglement({n, HalfInt(0), n / 2}, EntropyMethod::Exact));
      }
      double mx = 0, my = 0, sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
      for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
      run.check("ln_scaling_slope", sxy / sxx, 0.5, 0.1);
      return;
    }
    const HalfInt m = parse_half(a->m);
    auto& t = run.table("", {"n", "m", "la", "exact", "saddle", "saddle_variance"});
    const int lo = a->la > 0 ? a->la : 1;
    const int hi = a->la > 0 ? a->la : a->n - 1;
    for (int la = lo; la <= hi; ++la) {
      const DickeSplit split{a->n, m, la};
      t.row(a->n, m, la, dicke_entanglement(split, EntropyMethod::Exact),
            dicke_entanglement(split, EntropyMethod::Saddle), dicke_saddle_variance(split));
    }
  };
}

// ---- multiplicity -----------------------------------------------------------

struct MultArgs {
  int n = 4;
};

std::function<void(Run&)> multiplicity(Options& o) {
  auto a = std::make_shared<MultArgs>();
  o.add("n", a->n, "Number of spin-1/2 sites");
  return [a](Run& run) {
    if (run.selftest()) {
      run.check("N4_S2", spin_multiplicity_exact(4, HalfInt(4)) == 1);
      run.check("N4_S1", spin_multiplicity_exact(4, HalfInt(2)) == 3);
      run.check("N4_S0", spin_multiplicity_exact(4, HalfInt(0)) == 2);
      run.check("N3_S3/2", spin_multiplicity_exact(3, HalfInt(3)) == 1);
      run.check("N3_S1/2", spin_multiplicity_exact(3, HalfInt(1)) == 2);
      bool sum_rule = true;
      for (int n = 1; n <= 64; ++n) {
        exact::BigInt total = 0;
        for (int ts = n % 2; ts <= n; ts += 2) total += spin_multiplicity_exact(n, HalfInt(ts)) * (ts + 1);
        sum_rule &= total == (exact::BigInt(1) << n);
      }
      run.check("dimension_sum_rule_N64", sum_rule);
      run.check("gaussian_ratio_N1e4_S2sqrtN", multiplicity_gaussian_ratio(10000, HalfInt(400)), 1.0, 0.05);
      return;
    }
    require(a->n >= 1, ErrorKind::InvalidArgument, "need n >= 1");
    auto& t = run.table("", {"s", "multiplicity", "degeneracy", "gaussian_ratio"});
    exact::BigInt total = 0;
    for (int ts = a->n; ts >= a->n % 2; ts -= 2) {
      const auto mult = spin_multiplicity_exact(a->n, HalfInt(ts));
      total += mult * (ts + 1);
      const std::string ratio = ts > 0 ? format_double(multiplicity_gaussian_ratio(a->n, HalfInt(ts))) : std::string();
      t.row(HalfInt(ts), mult, ts + 1, ratio);
    }
    run.json("", Json{{"dimension", total.str()}, {"sum_rule_holds", total == (exact::BigInt(1) << a->n)}});
  };
}

// ---- moment-compare ---------------------------------------------------------

struct MomentArgs {
  int g_max = 5;
  double sigma = 1.0;
};

std::function<void(Run&)> moment_compare(Options& o) {
  auto a = std::make_shared<MomentArgs>();
  o.add("g-max", a->g_max, "Largest half-order g (moment 2g)");
  o.add("sigma", a->sigma, "Width sigma");
  return [a](Run& run) {
    if (run.selftest()) {
      const auto one = nonequil::moment_compare(1, 0.8);
      run.check("g1_arcsine", one.arcsine, 0.64, 1e-15);
      run.check("g1_gaussian", one.gaussian, 0.64, 1e-15);
      const auto two = nonequil::moment_compare(2, 1.0);
      run.check("g2_arcsine", two.arcsine, 1.5, 1e-15);
      run.check("g2_gaussian", two.gaussian, 3.0, 1e-15);
      run.check("g5_arcsine", nonequil::moment_compare(5, 1.0).arcsine, 252.0 / 32.0, 1e-13);
      run.check("g5_gaussian", nonequil::moment_compare(5, 1.0).gaussian, 945.0, 1e-11);
      return;
    }
    require(a->g_max >= 1, ErrorKind::InvalidArgument, "need g-max >= 1");
    auto& t = run.table("", {"g", "arcsine", "gaussian", "ratio"});
    for (int g = 1; g <= a->g_max; ++g) {
      const auto m = nonequil::moment_compare(g, a->sigma);
      t.row(g, m.arcsine, m.gaussian, m.arcsine / m.gaussian);
    }
  };
}

}  // namespace

void add_stat_commands(std::vector<Command>& out) {
  out.push_back({"ising-corr", "Domain-wall eigenstate correlators of the Ising chain", ising_corr});
  out.push_back({"dicke-entropy", "Entanglement entropy of a bipartitioned Dicke state", dicke_entropy});
  out.push_back({"multiplicity", "Total-spin multiplicities of N spin-1/2 sites", multiplicity});
  out.push_back({"moment-compare", "Arcsine against Gaussian even moments", moment_compare});
}

}  // namespace densfluct::cli
