#include "run.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "densfluct/error.hpp"

#ifndef DENSFLUCT_VERSION
#define DENSFLUCT_VERSION "unknown"
#endif

namespace densfluct::cli {

namespace {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::ParseError, "cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  require(out.good(), ErrorKind::InvalidArgument, "cannot write " + path.string());
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_escape(columns[i]);
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_escape(r[i]);
    out += '\n';
  }
  return out;
}

Run::Run(std::string subcommand, std::map<std::string, std::string> parameters, std::filesystem::path out_dir,
         bool selftest)
    : subcommand_(std::move(subcommand)),
      parameters_(std::move(parameters)),
      out_dir_(std::move(out_dir)),
      selftest_(selftest),
      checks_{"selftest", {"check", "value", "reference", "tolerance", "pass"}, {}} {}

Table& Run::table(const std::string& name, std::vector<std::string> columns) {
  tables_.push_back({name, std::move(columns), {}});
  return tables_.back();
}

void Run::json(const std::string& name, Json doc) { docs_.emplace_back(name, std::move(doc)); }

void Run::input(const std::filesystem::path& path) { digests_[path.string()] = sha256_file(path); }

void Run::check(const std::string& name, double value, double reference, double tolerance) {
  const bool ok = std::abs(value - reference) <= tolerance;
  failed_ |= !ok;
  checks_.row(name, value, reference, tolerance, ok);
}

void Run::check(const std::string& name, bool ok) {
  failed_ |= !ok;
  checks_.row(name, ok ? 1.0 : 0.0, 1.0, 0.0, ok);
}

std::string Run::file_name(const std::string& name, const char* ext) const {
  return name.empty() ? subcommand_ + ext : subcommand_ + "." + name + ext;
}

int Run::finish() {
  std::filesystem::create_directories(out_dir_);
  Json outputs = Json::array();
  auto emit = [&](const std::string& file, const std::string& text) {
    write_file(out_dir_ / file, text);
    outputs.push_back(file);
  };
  if (selftest_) emit(file_name("selftest", ".csv"), checks_.csv());
  for (const auto& t : tables_) emit(file_name(t.name, ".csv"), t.csv());
  for (const auto& [name, doc] : docs_) emit(file_name(name, ".json"), doc.dump(2) + "\n");

  Json params = Json::object();
  for (const auto& [k, v] : parameters_) params[k] = v;
  Json digests = Json::object();
  for (const auto& [k, v] : digests_) digests[k] = v;
  const Json manifest{{"subcommand", subcommand_},
                      {"parameters", params},
                      {"tool_version", DENSFLUCT_VERSION},
                      {"input_digests", digests},
                      {"outputs", outputs}};
  write_file(out_dir_ / file_name("manifest", ".json"), manifest.dump(2) + "\n");

  if (selftest_) {
    std::cout << checks_.csv();
  } else {
    if (!tables_.empty()) std::cout << tables_.front().csv();
    for (const auto& r : checks_.rows)
      if (r.back() == "false")
        std::cerr << subcommand_ << ": check " << r[0] << " failed: " << r[1] << " vs " << r[2] << " (tolerance "
                  << r[3] << ")\n";
  }
  return failed_ ? 1 : 0;
}

std::map<std::string, std::string> Options::values() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, get] : getters_) out[name] = get();
  return out;
}

HalfInt parse_half(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    require(text.substr(slash + 1) == "2", ErrorKind::InvalidArgument, "half-integer must be k/2: " + text);
    int twice = 0;
    try {
      std::size_t used = 0;
      twice = std::stoi(text.substr(0, slash), &used);
      require(used == slash, ErrorKind::InvalidArgument, "not a half-integer: " + text);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "not a half-integer: " + text);
    }
    return HalfInt(twice);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "not a half-integer: " + text);
  }
  require(used == text.size(), ErrorKind::InvalidArgument, "not a half-integer: " + text);
  return HalfInt::from_double(v);
}

}  // namespace densfluct::cli
