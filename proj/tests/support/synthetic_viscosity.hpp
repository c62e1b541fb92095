#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "densfluct/nonequil_observables.hpp"
#include "densfluct/viscosity_data.hpp"

// Viscosity rows drawn from the erfc law, optionally with multiplicative
// log-normal noise, shared by unit tests, the fixture writer and acceptance.

namespace densfluct::testing {

struct SyntheticLiquid {
  std::string id;
  double t_liquidus;
  double eta_liquidus;
  double abar;
};

// `rows` temperatures evenly spaced on [t_low_fraction T_l, T_l], plus
// `above_rows` points above the liquidus.
inline ViscosityRecord synthetic_record(const SyntheticLiquid& liquid, int rows, double t_low_fraction,
                                        double log_noise, std::mt19937_64& rng, int above_rows = 0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ViscosityRecord rec{liquid.id, {}, liquid.t_liquidus, liquid.eta_liquidus};
  const double t0 = t_low_fraction * liquid.t_liquidus;
  for (int i = 0; i < rows; ++i) {
    const double t = t0 + (liquid.t_liquidus - t0) * i / (rows - 1);
    double eta = nonequil::viscosity_predict(t, liquid.t_liquidus, liquid.abar, liquid.eta_liquidus);
    if (log_noise > 0.0) eta *= std::exp(log_noise * gauss(rng));
    rec.rows.push_back({t, eta, i + 2, false});
  }
  for (int i = 1; i <= above_rows; ++i) {
    const double t = liquid.t_liquidus * (1.0 + 0.05 * i);
    rec.rows.push_back({t, liquid.eta_liquidus * std::exp(-0.1 * i), rows + i + 1, true});
  }
  return rec;
}

inline ViscosityDataset synthetic_dataset(const std::vector<SyntheticLiquid>& liquids, int rows, double t_low_fraction,
                                          double log_noise, std::uint64_t seed, int above_rows = 0) {
  std::mt19937_64 rng(seed);
  ViscosityDataset ds;
  for (const auto& l : liquids) ds.liquids.push_back(synthetic_record(l, rows, t_low_fraction, log_noise, rng, above_rows));
  std::sort(ds.liquids.begin(), ds.liquids.end(),
            [](const ViscosityRecord& a, const ViscosityRecord& b) { return a.liquid_id < b.liquid_id; });
  return ds;
}

// The two noiseless liquids written to synth.csv / synth_meta.csv.
inline std::vector<SyntheticLiquid> fixture_liquids() {
  return {{"synth-a", 1000.0, 10.0, 0.085}, {"synth-b", 750.0, 1.0, 0.11}};
}
inline constexpr int kFixtureRows = 24;
inline constexpr double kFixtureLowFraction = 0.6;

}  // namespace densfluct::testing
