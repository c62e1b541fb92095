#include <cmath>
#include <memory>
#include <numbers>

#include "densfluct/collective_spin.hpp"
#include "densfluct/error.hpp"
#include "densfluct/exact_lattice.hpp"
#include "densfluct/special_functions.hpp"
#include "run.hpp"

namespace densfluct::cli {

namespace {

using std::numbers::pi;

SpinSector sector_from(int n, const std::string& stot, const std::string& m) {
  const HalfInt s = stot.empty() ? HalfInt(n) : parse_half(stot);
  return SpinSector(n, s, parse_half(m));
}

double lattice_sigma(lattice::Evolver& ev, const lattice::MatrixOperator& h, const lattice::QuantumState& psi0,
                     double theta) {
  const int n = psi0.n_sites();
  const auto psi = lattice::QuantumState::evolved(n, ev.apply(psi0.amplitudes(), 1.0, theta));
  return std::sqrt(std::max(0.0, lattice::variance(h.matrix, psi))) / n;
}

// ---- spin-sigma -------------------------------------------------------------

struct SigmaArgs {
  int n = 4;
  std::string stot;
  std::string m = "0";
  double bz = 1.0;
  double by = 1.0;
  double theta = pi / 2;
  int theta_steps = 0;
  std::string mode = "replace";
};

void spin_sigma_selftest(Run& run) {
  const auto rot = [](double th) { return DriveSchedule::rotation(th, 1.0); };
  const auto d4 = [](int twice_m) { return SpinSector::dicke(4, HalfInt(twice_m)); };
  run.check("N4_m0_half_pi", collective::analytic_sigma(d4(0), rot(pi / 2), pi / 2),
            std::sqrt(1.5) / (2 * std::sqrt(2.0)), 1e-14);
  run.check("N4_m0_half_pi_rounded", collective::analytic_sigma(d4(0), rot(pi / 2), pi / 2), 0.433013, 5e-7);
  run.check("N4_m2_half_pi", collective::analytic_sigma(d4(4), rot(pi / 2), pi / 2), 0.25, 1e-14);
  run.check("theta_zero", collective::analytic_sigma(d4(2), rot(0.0), 0.0), 0.0, 0.0);
  run.check("energy_change_m2_pi",
            collective::analytic_energy_mean(d4(4), rot(pi), pi, 0.0) -
                collective::analytic_energy_mean(d4(4), rot(0.0), 0.0, 0.0),
            1.0, 1e-14);
  run.check("energy_m1_half_pi", collective::analytic_energy_mean(d4(2), rot(pi / 2), pi / 2, 0.0), 0.0, 1e-15);
  const auto lat = lattice::LatticeSpec::all_to_all(4, 1.0, 1.0);
  lattice::Evolver ev(lat, DriveMode::Replace);
  const auto h = lattice::build_spin_hamiltonian(lat);
  for (int twice_m : {-4, 0, 2}) {
    run.check("lattice_N4_2m" + std::to_string(twice_m),
              lattice_sigma(ev, h, lattice::dicke_state(4, HalfInt(twice_m)), pi / 2),
              collective::analytic_sigma(d4(twice_m), rot(pi / 2), pi / 2), 1e-10);
  }
  const auto aug = DriveSchedule::constant(DriveMode::Augment, 1.0, 1.3, 1.0);
  const auto aug_traj = lattice::evolve_state(lattice::dicke_state(4, HalfInt(2)), lat, aug);
  run.check("lattice_augment_N4", std::sqrt(lattice::variance(h.matrix, aug_traj.back().state)) / 4,
            collective::analytic_sigma(d4(2), aug, 1.3), 1e-10);
}

std::function<void(Run&)> spin_sigma(Options& o) {
  auto a = std::make_shared<SigmaArgs>();
  o.add("n", a->n, "Number of sites N");
  o.add("stot", a->stot, "Total spin S_tot (default N/2); accepts k/2");
  o.add("m", a->m, "Magnetisation m; accepts k/2");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("by", a->by, "Transverse field b_y");
  o.add("theta", a->theta, "Accumulated angle theta = b_y t (sweep end when --theta-steps > 0)");
  o.add("theta-steps", a->theta_steps, "Sweep theta over [0, --theta] in this many steps");
  o.add("mode", a->mode, "replace or augment")->check(CLI::IsMember({"replace", "augment"}));
  return [a](Run& run) {
    if (run.selftest()) return spin_sigma_selftest(run);
    require(a->by != 0.0, ErrorKind::InvalidArgument, "--by must be non-zero");
    const SpinSector sector = sector_from(a->n, a->stot, a->m);
    const bool replace = a->mode == "replace";
    auto& t = run.table("", {"n", "stot", "m", "bz", "by", "mode", "theta", "time", "sigma", "energy_density"});
    const int steps = std::max(0, a->theta_steps);
    for (int k = 0; k <= steps; ++k) {
      const double theta = steps == 0 ? a->theta : a->theta * k / steps;
      const double time = theta / a->by;
      const auto sched = DriveSchedule::constant(replace ? DriveMode::Replace : DriveMode::Augment, a->by,
                                                 std::abs(time), a->bz);
      const double tf = std::abs(time);
      const double sigma = collective::analytic_sigma(sector, sched, tf);
      const std::string energy =
          replace ? format_double(collective::analytic_energy_mean(sector, sched, tf, 0.0)) : std::string();
      t.row(a->n, sector.s_tot(), sector.m(), a->bz, a->by, a->mode, theta, time, sigma, energy);
    }
  };
}

// ---- spin-dist --------------------------------------------------------------

struct DistArgs {
  std::string stot = "100";
  std::string m = "0";
  int n = 0;
  double theta = pi / 2;
  double bz = 1.0;
  int q_points = 10;
};

struct DistSummary {
  double sigma, center, ks, max_char_diff;
};

DistSummary spin_distribution(Run* run, const SpinSector& sector, double theta, double bz, int q_points) {
  const auto sched = DriveSchedule::rotation(theta, bz);
  const double sigma = collective::analytic_sigma(sector, sched, theta);
  const double center = collective::analytic_energy_mean(sector, sched, theta, 0.0);
  const auto dist = collective::eigenweight_distribution(sector, theta, bz, 0.0);
  DistSummary s{sigma, center, 0.0, 0.0};
  if (sigma > 0.0) s.ks = collective::ks_distance_to_arcsine(dist.points(), center, sigma);
  Table* weights = run ? &run->table("", {"energy", "weight", "cumulative", "arcsine_cdf"}) : nullptr;
  double cum = 0.0;
  for (const auto& p : dist.points().points) {
    cum += p.weight;
    if (weights)
      weights->row(p.value, p.weight, cum, sigma > 0.0 ? collective::arcsine_cdf(p.value, center, sigma) : 0.0);
  }
  Table* chars = run ? &run->table("characteristic", {"q", "empirical", "arcsine", "abs_diff"}) : nullptr;
  if (sigma > 0.0) {
    for (int k = 1; k <= q_points; ++k) {
      const double q = 0.5 * k / sigma;
      const double emp = dist.characteristic(q);
      const double arc = collective::characteristic_value(q, sigma);
      s.max_char_diff = std::max(s.max_char_diff, std::abs(emp - arc));
      if (chars) chars->row(q, emp, arc, std::abs(emp - arc));
    }
  }
  return s;
}

std::function<void(Run&)> spin_dist(Options& o) {
  auto a = std::make_shared<DistArgs>();
  o.add("stot", a->stot, "Total spin S_tot; accepts k/2");
  o.add("m", a->m, "Magnetisation m; accepts k/2");
  o.add("n", a->n, "Number of sites (default 2 S_tot)");
  o.add("theta", a->theta, "Rotation angle");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("q-points", a->q_points, "Characteristic-function samples q_k = k / (2 sigma)");
  return [a](Run& run) {
    if (run.selftest()) {
      const auto half = collective::eigenweight_distribution(SpinSector(1, HalfInt(1), HalfInt(1)), pi / 2);
      run.check("half_spin_two_points", half.points().points.size() == 2);
      for (const auto& p : half.points().points) run.check("half_spin_weight", p.weight, 0.5, 1e-14);
      const auto still = collective::eigenweight_distribution(SpinSector(8, HalfInt(8), HalfInt(2)), 0.0);
      int nonzero = 0;
      for (const auto& p : still.points().points) nonzero += p.weight > 0.0;
      run.check("theta_zero_point_mass", nonzero == 1);
      const auto big = spin_distribution(nullptr, SpinSector(2000, HalfInt(2000), HalfInt(0)), pi / 2, 1.0, 10);
      run.check("ks_S1000", big.ks < 0.05);
      run.check("characteristic_S1000", big.max_char_diff, 0.0, 1e-3);
      run.check("j0_first_root", collective::characteristic_value(2.404825557695773 / std::sqrt(2.0), 1.0), 0.0,
                1e-10);
      return;
    }
    const HalfInt s = parse_half(a->stot);
    const SpinSector sector(a->n > 0 ? a->n : s.twice(), s, parse_half(a->m));
    const auto sum = spin_distribution(&run, sector, a->theta, a->bz, a->q_points);
    run.json("", Json{{"sigma", sum.sigma},
                      {"center", sum.center},
                      {"ks_distance", sum.ks},
                      {"max_characteristic_diff", sum.max_char_diff}});
  };
}

// ---- exact-check ------------------------------------------------------------

struct ExactArgs {
  int n_min = 2;
  int n_max = 6;
  int thetas = 20;
  double bz = 1.0;
  double j = 1.0;
  double tolerance = 1e-10;
};

void exact_check_body(Run& run, const ExactArgs& a) {
  require(a.n_min >= 2 && a.n_max >= a.n_min && a.n_max <= lattice::kMaxSites, ErrorKind::InvalidArgument,
          "need 2 <= n-min <= n-max <= 14");
  require(a.thetas >= 2, ErrorKind::InvalidArgument, "need at least 2 theta values");
  auto& t = run.table("", {"n", "m", "theta", "sigma_lattice", "sigma_analytic", "abs_diff"});
  double worst = 0.0;
  for (int n = a.n_min; n <= a.n_max; ++n) {
    const auto lat = lattice::LatticeSpec::all_to_all(n, a.j, a.bz);
    const auto h = lattice::build_spin_hamiltonian(lat);
    lattice::Evolver ev(lat, DriveMode::Replace);
    for (int twice_m = -n; twice_m <= n; twice_m += 2) {
      const auto psi0 = lattice::dicke_state(n, HalfInt(twice_m));
      const SpinSector sector = SpinSector::dicke(n, HalfInt(twice_m));
      for (int k = 0; k < a.thetas; ++k) {
        const double theta = pi * k / (a.thetas - 1);
        const double exact = lattice_sigma(ev, h, psi0, theta);
        const double analytic = collective::analytic_sigma(sector, DriveSchedule::rotation(theta, a.bz), theta);
        worst = std::max(worst, std::abs(exact - analytic));
        t.row(n, HalfInt(twice_m), theta, exact, analytic, std::abs(exact - analytic));
      }
    }
  }
  run.json("", Json{{"max_abs_diff", worst}, {"tolerance", a.tolerance}, {"pass", worst <= a.tolerance}});
  run.check("max_abs_diff", worst, 0.0, a.tolerance);
}

std::function<void(Run&)> exact_check(Options& o) {
  auto a = std::make_shared<ExactArgs>();
  o.add("n-min", a->n_min, "Smallest lattice size");
  o.add("n-max", a->n_max, "Largest lattice size (<= 14)");
  o.add("thetas", a->thetas, "Angles evenly spaced on [0, pi]");
  o.add("bz", a->bz, "Longitudinal field B_z");
  o.add("j", a->j, "All-to-all exchange J");
  o.add("tolerance", a->tolerance, "Maximum allowed |sigma_lattice - sigma_analytic|");
  return [a](Run& run) {
    if (run.selftest()) {
      ExactArgs small;
      small.n_max = 4;
      small.thetas = 5;
      return exact_check_body(run, small);
    }
    exact_check_body(run, *a);
  };
}

}  // namespace

void add_spin_commands(std::vector<Command>& out) {
  out.push_back({"spin-sigma", "Closed-form energy-density width of the driven collective spin", spin_sigma});
  out.push_back({"spin-dist", "Eigenweight distribution against the arcsine law", spin_dist});
  out.push_back({"exact-check", "Exact lattice evolution against the closed-form width", exact_check});
}

}  // namespace densfluct::cli
