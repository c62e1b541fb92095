#include "densfluct/viscosity_data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/tokenizer.hpp>

#include "densfluct/error.hpp"
#include "densfluct/serialize.hpp"

namespace densfluct {

std::size_t ViscosityRecord::retained_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += !r.above_liquidus;
  return n;
}

std::size_t ViscosityDataset::flagged_count() const {
  std::size_t n = 0;
  for (const auto& l : liquids) n += l.rows.size() - l.retained_count();
  return n;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  boost::tokenizer<boost::escaped_list_separator<char>> tok(line);
  std::vector<std::string> out;
  for (const auto& f : tok) out.push_back(trim(f));
  return out;
}

bool parse_number(const std::string& s, double& value) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

struct Table {
  std::vector<std::pair<int, std::vector<std::string>>> rows;
};

Table read_table(std::istream& in, const std::vector<std::string>& header, const std::string& name,
                 std::vector<std::string>& problems) {
  Table t;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv(line);
    } catch (const boost::escaped_list_error&) {
      problems.push_back(name + " line " + std::to_string(line_no) + ": unbalanced quoting");
      continue;
    }
    if (!have_header) {
      have_header = true;
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        problems.push_back(name + " line " + std::to_string(line_no) + ": header must be `" + expected + "`");
        return t;
      }
      continue;
    }
    if (fields.size() != header.size()) {
      problems.push_back(name + " line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
      continue;
    }
    t.rows.emplace_back(line_no, std::move(fields));
  }
  if (!have_header) problems.push_back(name + ": empty file");
  return t;
}

}  // namespace

ViscosityDataset ingest_viscosity(std::istream& data, std::istream& meta, const std::string& data_name,
                                  const std::string& meta_name) {
  std::vector<std::string> problems;
  const Table dt = read_table(data, {"liquid", "T_K", "eta_Pa_s"}, data_name, problems);
  const Table mt = read_table(meta, {"liquid", "T_liquidus_K", "eta_liquidus_Pa_s"}, meta_name, problems);

  std::map<std::string, std::pair<double, double>> metadata;
  for (const auto& [line, f] : mt.rows) {
    double tl = 0.0, el = 0.0;
    const std::string where = meta_name + " line " + std::to_string(line) + ": ";
    if (f[0].empty()) problems.push_back(where + "empty liquid id");
    else if (!parse_number(f[1], tl) || tl <= 0.0) problems.push_back(where + "T_liquidus_K must be a positive number");
    else if (!parse_number(f[2], el) || el <= 0.0) problems.push_back(where + "eta_liquidus_Pa_s must be a positive number");
    else if (!metadata.emplace(f[0], std::make_pair(tl, el)).second)
      problems.push_back(where + "duplicate metadata for liquid `" + f[0] + "`");
  }

  std::map<std::string, std::vector<ViscosityRow>> rows;
  for (const auto& [line, f] : dt.rows) {
    double t = 0.0, eta = 0.0;
    const std::string where = data_name + " line " + std::to_string(line) + ": ";
    if (f[0].empty()) problems.push_back(where + "empty liquid id");
    else if (!parse_number(f[1], t) || t <= 0.0) problems.push_back(where + "T_K must be a positive number");
    else if (!parse_number(f[2], eta) || eta <= 0.0) problems.push_back(where + "eta_Pa_s must be a positive number");
    else rows[f[0]].push_back({t, eta, line, false});
  }
  if (!problems.empty()) {
    std::string msg = "malformed viscosity input";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorKind::ParseError, msg);
  }

  std::vector<std::string> missing;
  for (const auto& [id, r] : rows)
    if (!metadata.count(id)) missing.push_back(id);
  if (!missing.empty()) {
    std::string msg = "no metadata for liquid(s):";
    for (const auto& id : missing) msg += " " + id;
    throw Error(ErrorKind::MissingMetadata, msg);
  }

  ViscosityDataset ds;
  for (auto& [id, r] : rows) {
    const auto [tl, el] = metadata.at(id);
    for (auto& row : r) row.above_liquidus = row.temperature > tl;
    ds.liquids.push_back({id, std::move(r), tl, el});
  }
  return ds;
}

ViscosityDataset load_viscosity(const std::filesystem::path& data, const std::filesystem::path& meta) {
  std::ifstream d(data), m(meta);
  require(d.good(), ErrorKind::ParseError, "cannot open " + data.string());
  require(m.good(), ErrorKind::ParseError, "cannot open " + meta.string());
  return ingest_viscosity(d, m, data.filename().string(), meta.filename().string());
}

namespace {

// Quoted with backslash escapes when the id would not survive the reader's
// escaped-list tokenizer verbatim.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\\") == std::string::npos && s == trim(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_viscosity_csv(std::ostream& data, std::ostream& meta, const ViscosityDataset& dataset) {
  data << "liquid,T_K,eta_Pa_s\n";
  meta << "liquid,T_liquidus_K,eta_liquidus_Pa_s\n";
  for (const auto& l : dataset.liquids) {
    meta << csv_field(l.liquid_id) << ',' << format_double(l.t_liquidus) << ',' << format_double(l.eta_liquidus) << '\n';
    for (const auto& r : l.rows)
      data << csv_field(l.liquid_id) << ',' << format_double(r.temperature) << ',' << format_double(r.eta) << '\n';
  }
}

}  // namespace densfluct
