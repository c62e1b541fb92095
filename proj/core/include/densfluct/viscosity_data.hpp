#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

// Viscosity measurements: data CSV `liquid,T_K,eta_Pa_s` and metadata CSV
// `liquid,T_liquidus_K,eta_liquidus_Pa_s`.

namespace densfluct {

struct ViscosityRow {
  double temperature;  // K
  double eta;          // Pa s
  int line;            // 1-based line in the data file
  bool above_liquidus;
};

struct ViscosityRecord {
  std::string liquid_id;
  std::vector<ViscosityRow> rows;
  double t_liquidus;
  double eta_liquidus;

  std::size_t retained_count() const;
};

struct ViscosityDataset {
  // Sorted by liquid id; rows keep file order.
  std::vector<ViscosityRecord> liquids;
  std::size_t flagged_count() const;
};

// Throws ParseError listing every malformed line, MissingMetadata listing
// every liquid without a metadata row.
ViscosityDataset ingest_viscosity(std::istream& data, std::istream& meta, const std::string& data_name = "data",
                                  const std::string& meta_name = "meta");
ViscosityDataset load_viscosity(const std::filesystem::path& data, const std::filesystem::path& meta);

void write_viscosity_csv(std::ostream& data, std::ostream& meta, const ViscosityDataset& dataset);

}  // namespace densfluct
