#include <cstdio>
#include <filesystem>
#include <fstream>

#include "densfluct/viscosity_data.hpp"
#include "support/synthetic_viscosity.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_viscosity_fixture <output-dir>\n");
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const auto ds = densfluct::testing::synthetic_dataset(densfluct::testing::fixture_liquids(),
                                                        densfluct::testing::kFixtureRows,
                                                        densfluct::testing::kFixtureLowFraction, 0.0, 0);
  std::ofstream data(dir / "synth.csv", std::ios::binary), meta(dir / "synth_meta.csv", std::ios::binary);
  densfluct::write_viscosity_csv(data, meta, ds);
  return data.good() && meta.good() ? 0 : 1;
}
