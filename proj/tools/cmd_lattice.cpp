#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "densfluct/bounds.hpp"
#include "densfluct/error.hpp"
#include "densfluct/exact_lattice.hpp"
#include "densfluct/magnus.hpp"
#include "run.hpp"

namespace densfluct::cli {

namespace {

using std::numbers::pi;
using lattice::Complex;
using lattice::DenseMatrix;
using lattice::LatticeSpec;
using lattice::Vector;

LatticeSpec make_lattice(const std::string& geometry, int n, double j, double bz, std::uint64_t seed) {
  if (geometry == "chain") return LatticeSpec::chain(n, j, bz);
  if (geometry == "all") return LatticeSpec::all_to_all(n, j, bz);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-j, 2.0 * j);
  std::bernoulli_distribution keep(0.6);
  std::vector<lattice::Coupling> c;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (keep(rng)) c.push_back({a, b, u(rng)});
  return LatticeSpec(n, c, bz);
}

lattice::QuantumState rotated_dicke(const LatticeSpec& lat, HalfInt m, double theta) {
  return lattice::evolve_state(lattice::dicke_state(lat.n_sites(), m), lat, DriveSchedule::rotation(theta, lat.b_z()))
      .back()
      .state;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

// ---- bose-dual --------------------------------------------------------------

struct BoseArgs {
  int n = 4;
  double j = 1.0;
  double bz = 1.0;
  std::string geometry = "chain";
  int seed = 1;
  double tolerance = 1e-10;
};

lattice::BoseDualReport bose_body(Run* run, const LatticeSpec& lat, double tol) {
  const auto report = lattice::bose_dual(lat, tol);
  if (run) {
    const auto es = lattice::diagonalize(lattice::build_spin_hamiltonian(lat).matrix).eigenvalues;
    const auto eb = lattice::diagonalize(report.h_bose.matrix).eigenvalues;
    auto& t = run->table("", {"index", "e_spin", "e_bose", "abs_diff"});
    for (Eigen::Index k = 0; k < es.size(); ++k) t.row(static_cast<int>(k), es(k), eb(k), std::abs(es(k) - eb(k)));
    Json couplings = Json::array();
    for (const auto& c : lat.couplings()) couplings.push_back({c.i, c.j, c.value});
    run->json("", Json{{"couplings", couplings},
                       {"constant_offset", report.constant_offset},
                       {"spectrum_max_diff", report.spectrum_max_diff},
                       {"operator_max_diff", report.operator_max_diff},
                       {"number_map_max_diff", report.number_map_max_diff},
                       {"doping_map_max_diff", report.doping_map_max_diff},
                       {"spectra_agree", report.spectra_agree}});
  }
  return report;
}

std::function<void(Run&)> bose_dual(Options& o) {
  auto a = std::make_shared<BoseArgs>();
  o.add("n", a->n, "Number of sites (<= 14)");
  o.add("j", a->j, "Exchange scale J");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("geometry", a->geometry, "chain, all, or random (couplings uniform in [-J, 2J] on 60% of pairs)")
      ->check(CLI::IsMember({"chain", "all", "random"}));
  o.add("seed", a->seed, "Seed for --geometry random");
  o.add("tolerance", a->tolerance, "Spectrum agreement tolerance");
  return [a](Run& run) {
    if (run.selftest()) {
      const auto two = lattice::bose_dual(LatticeSpec::chain(2, 1.0, 1.0));
      const auto eb = lattice::diagonalize(two.h_bose.matrix).eigenvalues;
      const double want[] = {-1.25, -0.25, 0.75, 0.75};
      for (int k = 0; k < 4; ++k) run.check("N2_bose_level_" + std::to_string(k), eb(k), want[k], 1e-12);
      for (int n = 2; n <= 6; ++n) {
        const auto r = lattice::bose_dual(make_lattice("random", n, 1.0, 0.8, 100 + n));
        run.check("random_N" + std::to_string(n) + "_spectra", r.spectrum_max_diff, 0.0, 1e-10);
        run.check("random_N" + std::to_string(n) + "_number_map", r.number_map_max_diff, 0.0, 0.0);
        run.check("random_N" + std::to_string(n) + "_doping_map", r.doping_map_max_diff, 0.0, 1e-15);
      }
      return;
    }
    const auto r = bose_body(&run, make_lattice(a->geometry, a->n, a->j, a->bz, a->seed), a->tolerance);
    run.check("spectrum_max_diff", r.spectrum_max_diff, 0.0, a->tolerance);
  };
}

// ---- magnus-check -----------------------------------------------------------

struct MagnusArgs {
  int n = 4;
  double j = 1.0;
  double bz = 1.0;
  double t_min = 1e-3;
  double t_max = 1e-1;
  int points = 9;
  std::string m = "0";
  double theta0 = 0.7;
};

double magnus_slope(Run* run, const MagnusArgs& a) {
  require(a.points >= 2 && a.t_min > 0.0 && a.t_max > a.t_min, ErrorKind::InvalidArgument,
          "need points >= 2 and 0 < t-min < t-max");
  const auto lat = LatticeSpec::chain(a.n, a.j, a.bz);
  const auto psi = rotated_dicke(lat, parse_half(a.m), a.theta0);
  Table* err = run ? &run->table("", {"t", "magnus_error"}) : nullptr;
  Table* var = run ? &run->table("variance",
                                 {"t", "sigma_sq_initial", "first_order", "second_order", "second_order_printed",
                                  "exact_sigma_sq", "remainder_first", "remainder_second"})
                   : nullptr;
  std::vector<double> lx, ly;
  for (int k = 0; k < a.points; ++k) {
    const double t = a.t_min * std::pow(a.t_max / a.t_min, static_cast<double>(k) / (a.points - 1));
    const auto sched = magnus::two_segment_schedule(t, a.bz);
    const double e = magnus::magnus_error(lat, sched, t);
    lx.push_back(std::log(t));
    ly.push_back(std::log(e));
    if (err) err->row(t, e);
    if (var) {
      const auto s = magnus::variance_expansion(psi, lat, sched, t);
      var->row(t, s.sigma_sq_initial, s.first_order, s.second_order, s.second_order_printed, s.exact_sigma_sq,
               s.exact_sigma_sq - s.through_first(), s.exact_sigma_sq - s.through_second());
    }
  }
  return fit_slope(lx, ly);
}

std::function<void(Run&)> magnus_check(Options& o) {
  auto a = std::make_shared<MagnusArgs>();
  o.add("n", a->n, "Chain length");
  o.add("j", a->j, "Exchange J");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("t-min", a->t_min, "Smallest total time");
  o.add("t-max", a->t_max, "Largest total time");
  o.add("points", a->points, "Log-spaced sample count");
  o.add("m", a->m, "Dicke magnetisation of the initial state for the variance series");
  o.add("theta0", a->theta0, "Initial rotation angle of that state");
  return [a](Run& run) {
    if (run.selftest()) {
      run.check("truncation_slope", magnus_slope(nullptr, MagnusArgs{}), 3.0, 0.2);
      const auto lat = LatticeSpec::chain(4, 1.0, 1.0);
      const auto one = DriveSchedule::constant(DriveMode::Augment, 0.6, 0.9, 1.0);
      run.check("constant_hamiltonian_error", magnus::magnus_error(lat, one, 0.9), 0.0, 1e-12);
      const auto sp = lattice::diagonalize(lattice::build_spin_hamiltonian(lat).matrix);
      for (int k : {0, 6, 15}) {
        const auto psi = lattice::QuantumState::from_amplitudes(4, sp.eigenvectors.col(k));
        const auto s = magnus::variance_expansion(psi, lat, magnus::two_segment_schedule(0.2, 1.0), 0.2);
        run.check("eigenstate_first_bracket_" + std::to_string(k), s.first_order, 0.0, 1e-12);
      }
      return;
    }
    const double slope = magnus_slope(&run, *a);
    run.json("", Json{{"truncation_slope", slope}});
  };
}

// ---- variance-rate ----------------------------------------------------------

struct RateArgs {
  int n = 5;
  double j = 1.0;
  double bz = 1.0;
  double by = 0.7;
  std::string m = "1/2";
  double theta0 = 0.9;
  double t_max = 2.0;
  int steps = 20;
  double step = 1e-3;
};

// Max relative mismatch between the rate formula and a Richardson central
// difference of Var(H/N) along exp(-i H_drive t).
double rate_body(Run* run, const RateArgs& a) {
  require(a.steps >= 1 && a.t_max > 0.0 && a.step > 0.0, ErrorKind::InvalidArgument,
          "need steps >= 1, t-max > 0, step > 0");
  const auto lat = LatticeSpec::chain(a.n, a.j, a.bz);
  const DenseMatrix h = lattice::build_spin_hamiltonian(lat).dense();
  const DenseMatrix hd = lattice::segment_hamiltonian(lat, DriveMode::Augment, a.by).dense();
  const Vector psi0 = rotated_dicke(lat, parse_half(a.m), a.theta0).amplitudes();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hd);
  const Vector c0 = es.eigenvectors().adjoint() * psi0;
  const auto state_at = [&](double t) -> Vector {
    Vector c = c0;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
    return es.eigenvectors() * c;
  };
  const double n2 = static_cast<double>(a.n) * a.n;
  const auto sigma_sq = [&](double t) {
    const Vector psi = state_at(t);
    const Vector hp = h * psi;
    const double mean = psi.dot(hp).real();
    return (hp - mean * psi).squaredNorm() / n2;
  };
  Table* tab = run ? &run->table("", {"t", "sigma_sq", "rate", "finite_difference"}) : nullptr;
  double worst = 0.0;
  for (int k = 0; k <= a.steps; ++k) {
    const double t = a.t_max * k / a.steps;
    const double d1 = (sigma_sq(t + a.step) - sigma_sq(t - a.step)) / (2 * a.step);
    const double d2 = (sigma_sq(t + 2 * a.step) - sigma_sq(t - 2 * a.step)) / (4 * a.step);
    const double fd = (4 * d1 - d2) / 3;
    const double rate = magnus::variance_rate(state_at(t), hd, h, a.n);
    worst = std::max(worst, std::abs(rate - fd) / std::max(std::abs(fd), 1e-6));
    if (tab) tab->row(t, sigma_sq(t), rate, fd);
  }
  return worst;
}

std::function<void(Run&)> variance_rate(Options& o) {
  auto a = std::make_shared<RateArgs>();
  o.add("n", a->n, "Chain length");
  o.add("j", a->j, "Exchange J");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("by", a->by, "Transverse field of the drive H_spin + H_tr");
  o.add("m", a->m, "Dicke magnetisation of the initial state");
  o.add("theta0", a->theta0, "Initial rotation angle");
  o.add("t-max", a->t_max, "End of the time grid");
  o.add("steps", a->steps, "Number of time intervals");
  o.add("step", a->step, "Finite-difference step");
  return [a](Run& run) {
    if (run.selftest()) {
      run.check("rate_vs_finite_difference", rate_body(nullptr, RateArgs{}), 0.0, 1e-6);
      DenseMatrix z(2, 2), w(2, 2);
      z << 1.0, 0.0, 0.0, -1.0;
      w << 0.5, 0.0, 0.0, 2.0;
      Vector psi(2);
      psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
      run.check("commuting_pair_rate", magnus::variance_rate(psi, z, w, 1.0), 0.0, 0.0);
      return;
    }
    const double worst = rate_body(&run, *a);
    run.json("", Json{{"max_relative_mismatch", worst}});
  };
}

// ---- bounds-check -----------------------------------------------------------

struct BoundsArgs {
  int n = 4;
  std::string m = "1";
  double theta = pi / 2;
  double bz = 1.0;
  double by = 1.0;
  double j = 1.0;
};

bounds::UncertaintyReports bounds_body(Run* run, const BoundsArgs& a) {
  const auto lat = LatticeSpec::all_to_all(a.n, a.j, a.bz);
  const auto psi = rotated_dicke(lat, parse_half(a.m), a.theta);
  const auto r =
      bounds::uncertainty_check(psi, lattice::build_spin_hamiltonian(lat), lattice::transverse_field(a.n, a.by), a.n);
  if (run) {
    auto& t = run->table("", {"bound", "lhs", "rhs", "satisfied", "slack"});
    t.row("commutator", r.commutator.lhs, r.commutator.rhs, r.commutator.satisfied, r.commutator.slack);
    t.row("rate", r.rate.lhs, r.rate.rhs, r.rate.satisfied, r.rate.slack);
    if (r.correlator)
      t.row("correlator_reported", r.correlator->lhs, r.correlator->rhs, r.correlator->satisfied, r.correlator->slack);
    run->json("", Json{{"sigma_density", r.sigma_density},
                       {"sigma_total", r.sigma_total},
                       {"energy_rate", r.energy_rate},
                       {"gbar_system", r.gbar_system},
                       {"gbar_total", r.gbar_total}});
  }
  return r;
}

std::function<void(Run&)> bounds_check(Options& o) {
  auto a = std::make_shared<BoundsArgs>();
  o.add("n", a->n, "Number of sites");
  o.add("m", a->m, "Dicke magnetisation");
  o.add("theta", a->theta, "Rotation angle of the initial Dicke state");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("by", a->by, "Transverse field of H~ = H_tr");
  o.add("j", a->j, "All-to-all exchange J");
  return [a](Run& run) {
    if (run.selftest()) {
      const auto r = bounds_body(nullptr, BoundsArgs{});
      run.check("worked_case_lhs", r.commutator.lhs, 0.625, 1e-6);
      run.check("worked_case_rhs", r.commutator.rhs, 0.125, 1e-6);
      run.check("rate_matches_commutator_rhs", r.rate.rhs, r.commutator.rhs, 1e-15);
      BoundsArgs zero;
      zero.m = "0";
      run.check("m0_energy_rate", bounds_body(nullptr, zero).energy_rate, 0.0, 1e-12);
      std::mt19937_64 rng(7);
      std::normal_distribution<double> g;
      double worst = 1.0;
      for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 64;
        DenseMatrix x(d, d), y(d, d);
        for (auto& v : x.reshaped()) v = {g(rng), g(rng)};
        for (auto& v : y.reshaped()) v = {g(rng), g(rng)};
        Vector psi(d);
        for (auto& v : psi) v = {g(rng), g(rng)};
        psi.normalize();
        worst = std::min(worst, bounds::robertson(psi, x + x.adjoint(), y + y.adjoint()).slack);
      }
      run.check("robertson_fuzz_min_slack_nonneg", worst >= -1e-12);
      return;
    }
    bounds_body(&run, *a);
  };
}

// ---- rate-threshold ---------------------------------------------------------

struct ThresholdArgs {
  double temperature = 1.0;
  double cv_total = 1.0;
  double cv_subsystem = 1.0;
  bool si = false;
};

std::function<void(Run&)> rate_threshold(Options& o) {
  auto a = std::make_shared<ThresholdArgs>();
  o.add("temperature", a->temperature, "Temperature (energy units, or K with --si)");
  o.add("cv-total", a->cv_total, "Heat capacity C_I (dimensionless, or J/K with --si)");
  o.add("cv-subsystem", a->cv_subsystem, "Heat capacity C_S (dimensionless, or J/K with --si)");
  o.flag("si", a->si, "SI input and output: K, J/K in; W out");
  return [a](Run& run) {
    if (run.selftest()) {
      run.check("T2_C1_C4", bounds::equilibrium_rate_threshold(2.0, 1.0, 4.0), 16.0, 1e-13);
      run.check("T0.5_C9_C1", bounds::equilibrium_rate_threshold(0.5, 9.0, 1.0), 1.5, 1e-14);
      run.check("zero_capacity", bounds::equilibrium_rate_threshold(1.0, 0.0, 3.0), 0.0, 0.0);
      // 2 (k_B T)^2 / hbar at T = 1 K, unit capacities.
      run.check("si_scale", 2.0 * std::pow(kBoltzmann, 2) / kHbar, 3.6151007059067653e-12, 1e-24);
      return;
    }
    double rate = 0.0;
    if (a->si) {
      const double t = kBoltzmann * a->temperature;
      rate = bounds::equilibrium_rate_threshold(t, a->cv_total / kBoltzmann, a->cv_subsystem / kBoltzmann) / kHbar;
    } else {
      rate = bounds::equilibrium_rate_threshold(a->temperature, a->cv_total, a->cv_subsystem);
    }
    auto& t = run.table("", {"temperature", "cv_total", "cv_subsystem", "threshold", "units"});
    t.row(a->temperature, a->cv_total, a->cv_subsystem, rate, a->si ? "W" : "natural");
  };
}

}  // namespace

void add_lattice_commands(std::vector<Command>& out) {
  out.push_back({"bose-dual", "Hard-core boson image of the spin Hamiltonian", bose_dual});
  out.push_back({"magnus-check", "Second-order Magnus truncation error and variance series", magnus_check});
  out.push_back({"variance-rate", "Variance rate formula against finite differences", variance_rate});
  out.push_back({"bounds-check", "Uncertainty bounds for a rotated Dicke state", bounds_check});
  out.push_back({"rate-threshold", "Equilibrium-preserving heating-rate threshold", rate_threshold});
}

}  // namespace densfluct::cli
