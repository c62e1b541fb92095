#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "densfluct/error.hpp"
#include "densfluct/nonequil_observables.hpp"
#include "densfluct/viscosity_data.hpp"
#include "run.hpp"

namespace densfluct::cli {

namespace {

using namespace densfluct::nonequil;

// Two noiseless liquids on the erfc law, written and re-read through the CSV
// reader.
ViscosityDataset builtin_dataset() {
  std::ostringstream data, meta;
  data << "liquid,T_K,eta_Pa_s\n";
  meta << "liquid,T_liquidus_K,eta_liquidus_Pa_s\n";
  const struct {
    const char* id;
    double tl, eta_l, abar;
  } liquids[] = {{"builtin-a", 1000.0, 10.0, 0.085}, {"builtin-b", 750.0, 1.0, 0.11}};
  for (const auto& l : liquids) {
    meta << l.id << ',' << format_double(l.tl) << ',' << format_double(l.eta_l) << '\n';
    for (int i = 0; i < 20; ++i) {
      const double t = l.tl * (0.6 + 0.4 * i / 19.0);
      data << l.id << ',' << format_double(t) << ',' << format_double(viscosity_predict(t, l.tl, l.abar, l.eta_l))
           << '\n';
    }
  }
  std::istringstream d(data.str()), m(meta.str());
  return ingest_viscosity(d, m, "builtin", "builtin_meta");
}

ErrorKind ingest_error(const std::string& data, const std::string& meta) {
  std::istringstream d(data), m(meta);
  try {
    ingest_viscosity(d, m);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

struct DataArgs {
  std::string data;
  std::string meta;
  double abar_lo = AbarBounds{}.lo;
  double abar_hi = AbarBounds{}.hi;
};

void add_data_options(Options& o, DataArgs& a) {
  o.add("data", a.data, "Viscosity CSV: liquid,T_K,eta_Pa_s");
  o.add("meta", a.meta, "Metadata CSV: liquid,T_liquidus_K,eta_liquidus_Pa_s");
  o.add("abar-lo", a.abar_lo, "Lower bound for abar");
  o.add("abar-hi", a.abar_hi, "Upper bound for abar");
}

std::vector<CollapseFit> load_and_fit(Run& run, const DataArgs& a) {
  require(!a.data.empty() && !a.meta.empty(), ErrorKind::InvalidArgument, "--data and --meta are required");
  run.input(a.data);
  run.input(a.meta);
  return fit_collapse(load_viscosity(a.data, a.meta), {a.abar_lo, a.abar_hi});
}

// ---- viscosity-fit ----------------------------------------------------------

std::function<void(Run&)> viscosity_fit(Options& o) {
  auto a = std::make_shared<DataArgs>();
  add_data_options(o, *a);
  return [a](Run& run) {
    if (run.selftest()) {
      const auto fits = fit_collapse(builtin_dataset());
      run.check("builtin_a_abar", fits.at(0).abar, 0.085, 1e-6);
      run.check("builtin_b_abar", fits.at(1).abar, 0.11, 1e-6);
      const std::string meta = "liquid,T_liquidus_K,eta_liquidus_Pa_s\nA,1000,1\n";
      run.check("nonpositive_eta_rejected",
                ingest_error("liquid,T_K,eta_Pa_s\nA,900,0\n", meta) == ErrorKind::ParseError);
      run.check("missing_metadata_rejected",
                ingest_error("liquid,T_K,eta_Pa_s\nB,900,2\n", meta) == ErrorKind::MissingMetadata);
      return;
    }
    const auto fits = load_and_fit(run, *a);
    auto& t = run.table("", {"liquid", "abar", "residual_rms", "at_boundary", "retained_rows", "excluded_rows",
                             "warning"});
    Json docs = Json::array();
    for (const auto& f : fits) {
      t.row(f.liquid_id, f.abar, f.residual_rms, f.at_boundary, f.points.size(), f.excluded_rows, f.warning);
      docs.push_back(to_json(f));
    }
    run.json("", docs);
  };
}

// ---- collapse ---------------------------------------------------------------

std::function<void(Run&)> collapse(Options& o) {
  auto a = std::make_shared<DataArgs>();
  add_data_options(o, *a);
  return [a](Run& run) {
    if (run.selftest()) {
      double worst = 0.0;
      for (const auto& f : fit_collapse(builtin_dataset()))
        for (const auto& p : f.points) worst = std::max(worst, std::abs(master_curve_residual(p)));
      run.check("master_curve_residual", worst, 0.0, 1e-6);
      return;
    }
    const auto fits = load_and_fit(run, *a);
    auto& t = run.table("", {"liquid", "x", "y"});
    Json summary = Json::object();
    for (const auto& f : fits) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo, worst = 0.0;
      for (const auto& p : f.points) {
        t.row(f.liquid_id, p.x, p.y);
        lo = std::min(lo, std::log10(p.y));
        hi = std::max(hi, std::log10(p.y));
        worst = std::max(worst, std::abs(master_curve_residual(p)));
      }
      summary[f.liquid_id] = Json{{"abar", f.abar},
                                  {"points", f.points.size()},
                                  {"log10_y_min", lo},
                                  {"log10_y_max", hi},
                                  {"max_master_curve_residual", worst}};
    }
    run.json("", summary);
  };
}

// ---- smear-green ------------------------------------------------------------

struct KernelArgs {
  std::string kernel = "gaussian";
  double center = 0.0;
  double sigma = 1.0;

  SmearKernel make() const {
    return kernel == "delta" ? SmearKernel::delta(center) : SmearKernel::gaussian(center, sigma);
  }
};

struct GreenArgs {
  KernelArgs k;
  double eps_k = 0.0;
  double z = 1.0;
  double tau = 10.0;
  double w_min = -6.0;
  double w_max = 6.0;
  int points = 241;
};

void green_selftest(Run& run) {
  std::vector<double> grid;
  for (int i = 0; i <= 4000; ++i) grid.push_back(-2.0 + 1e-3 * i);
  const auto lorentz = spectral_function(smeared_green(grid, 0.4, SmearKernel::delta(0.1), 0.8, 5.0));
  run.check("delta_kernel_fwhm", full_width_half_max(grid, lorentz), 2.0 / 5.0, 1e-4);
  const double inf = std::numeric_limits<double>::infinity();
  run.check("sum_rule_gaussian", spectral_weight_numeric(0.3, SmearKernel::gaussian(0.1, 0.3), 0.65, 4.0, -inf, inf),
            0.65, 1e-6);
  run.check("sum_rule_delta", spectral_weight_numeric(0.3, SmearKernel::delta(0.2), 0.65, 4.0, -inf, inf), 0.65,
            1e-6);
  std::vector<double> wide;
  for (int i = 0; i <= 1200; ++i) wide.push_back(-6.0 + 0.01 * i);
  const auto broad = spectral_function(smeared_green(wide, 0.0, SmearKernel::gaussian(0.0, 1.0), 1.0, 200.0));
  run.check("gaussian_dominated_fwhm", full_width_half_max(wide, broad), 2.355, 0.05 * 2.355);
}

std::function<void(Run&)> smear_green(Options& o) {
  auto a = std::make_shared<GreenArgs>();
  o.add("kernel", a->k.kernel, "delta or gaussian")->check(CLI::IsMember({"delta", "gaussian"}));
  o.add("mu", a->k.center, "Kernel position / mean of mu'");
  o.add("sigma", a->k.sigma, "Gaussian kernel width");
  o.add("eps-k", a->eps_k, "Dispersion eps_k");
  o.add("z", a->z, "Quasiparticle weight Z in (0, 1]");
  o.add("tau", a->tau, "Lifetime tau");
  o.add("w-min", a->w_min, "Grid start");
  o.add("w-max", a->w_max, "Grid end");
  o.add("points", a->points, "Grid points");
  return [a](Run& run) {
    if (run.selftest()) return green_selftest(run);
    require(a->points >= 2 && a->w_max > a->w_min, ErrorKind::InvalidArgument, "need points >= 2, w-max > w-min");
    std::vector<double> grid;
    for (int i = 0; i < a->points; ++i) grid.push_back(a->w_min + (a->w_max - a->w_min) * i / (a->points - 1));
    const auto kernel = a->k.make();
    const auto g = smeared_green(grid, a->eps_k, kernel, a->z, a->tau);
    const auto spec = spectral_function(g);
    auto& t = run.table("", {"omega", "re_g", "im_g", "spectral"});
    for (std::size_t i = 0; i < grid.size(); ++i) t.row(grid[i], g[i].real(), g[i].imag(), spec[i]);
    const double inf = std::numeric_limits<double>::infinity();
    Json doc{{"total_weight", spectral_weight_numeric(a->eps_k, kernel, a->z, a->tau, -inf, inf)},
             {"grid_weight_closed_form",
              spectral_weight_closed_form(a->eps_k, kernel, a->z, a->tau, a->w_min, a->w_max)}};
    try {
      doc["fwhm"] = full_width_half_max(grid, spec);
    } catch (const Error&) {
      doc["fwhm"] = nullptr;
    }
    run.json("", doc);
  };
}

// ---- smear-planck -----------------------------------------------------------

struct PlanckArgs {
  KernelArgs k{"gaussian", 1.0, 0.05};
  double nu_min = 0.1;
  double nu_max = 10.0;
  int points = 100;
  double ptei_weight = 0.0;
  double ptei_temperature = 1.0;
  bool si = false;
};

void planck_selftest(Run& run) {
  bool bit_exact = true;
  double worst_narrow = 0.0;
  for (double nu : {0.05, 0.5, 2.0, 8.0}) {
    for (double t : {0.8, 1.0, 3.0}) {
      bit_exact &= smeared_planck(nu, SmearKernel::delta(t)) == planck_occupation(nu, t);
      worst_narrow = std::max(
          worst_narrow, std::abs(smeared_planck(nu, SmearKernel::gaussian(t, 1e-4 * t)) / planck_occupation(nu, t) - 1));
    }
  }
  run.check("delta_kernel_bit_exact", bit_exact);
  run.check("narrow_kernel_relative", worst_narrow, 0.0, 1e-6);
  bool monotone = true;
  double prev = 0.0;
  for (double mean = 0.5; mean <= 3.0; mean += 0.5) {
    const double v = smeared_planck(1.3, SmearKernel::gaussian(mean, 0.04));
    monotone &= v > prev;
    prev = v;
  }
  run.check("monotone_in_temperature_shift", monotone);
}

std::function<void(Run&)> smear_planck(Options& o) {
  auto a = std::make_shared<PlanckArgs>();
  o.add("kernel", a->k.kernel, "delta or gaussian")->check(CLI::IsMember({"delta", "gaussian"}));
  o.add("temperature", a->k.center, "Kernel temperature / mean (K with --si)");
  o.add("sigma", a->k.sigma, "Gaussian kernel width in temperature");
  o.add("nu-min", a->nu_min, "First frequency (Hz with --si)");
  o.add("nu-max", a->nu_max, "Last frequency (Hz with --si)");
  o.add("points", a->points, "Frequency samples");
  o.add("ptei-weight", a->ptei_weight, "Weight of the fixed-temperature transition term");
  o.add("ptei-temperature", a->ptei_temperature, "Temperature of that term");
  o.flag("si", a->si, "Frequencies in Hz, temperatures in K; adds radiance in W m^-2 sr^-1 Hz^-1");
  return [a](Run& run) {
    if (run.selftest()) return planck_selftest(run);
    require(a->points >= 1 && a->nu_min > 0.0 && a->nu_max >= a->nu_min, ErrorKind::InvalidArgument,
            "need points >= 1 and 0 < nu-min <= nu-max");
    const auto kernel = a->k.make();
    std::vector<std::string> cols{"nu", "planck", "smeared"};
    if (a->si) cols.insert(cols.end(), {"planck_radiance", "smeared_radiance"});
    auto& t = run.table("", cols);
    for (int i = 0; i < a->points; ++i) {
      const double nu = a->points == 1 ? a->nu_min : a->nu_min + (a->nu_max - a->nu_min) * i / (a->points - 1);
      // Occupations depend on h nu / k_B T only, so SI input maps nu to kelvin.
      const double nu_nat = a->si ? kPlanck * nu / kBoltzmann : nu;
      const double plain = planck_occupation(nu_nat, a->k.center);
      const double smeared = smeared_planck(nu_nat, kernel, a->ptei_weight, a->ptei_temperature);
      if (a->si) {
        const double pref = 2.0 * kPlanck * nu * nu * nu / (kLightSpeed * kLightSpeed);
        t.row(nu, plain, smeared, pref * plain, pref * smeared);
      } else {
        t.row(nu, plain, smeared);
      }
    }
  };
}

}  // namespace

void add_nonequil_commands(std::vector<Command>& out) {
  out.push_back({"viscosity-fit", "Fit abar per liquid to the erfc viscosity law", viscosity_fit});
  out.push_back({"collapse", "Collapse coordinates (x, eta/eta_l) per liquid", collapse});
  out.push_back({"smear-green", "Chemical-potential-smeared coherent Green's function", smear_green});
  out.push_back({"smear-planck", "Temperature-smeared Planck occupation and radiance", smear_planck});
}

}  // namespace densfluct::cli
