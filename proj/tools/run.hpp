#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "densfluct/exact_arith.hpp"
#include "densfluct/half_int.hpp"
#include "densfluct/serialize.hpp"

namespace densfluct::cli {

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(long v) { return std::to_string(v); }
inline std::string cell(unsigned long v) { return std::to_string(v); }
inline std::string cell(bool v) { return v ? "true" : "false"; }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }
inline std::string cell(HalfInt v) { return v.str(); }
inline std::string cell(const exact::BigInt& v) { return v.str(); }

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  template <class... Ts>
  void row(const Ts&... values) {
    rows.push_back({cell(values)...});
  }
  std::string csv() const;
};

// One invocation of a subcommand: collects tables, JSON documents and
// selftest checks, then writes them with a manifest into the output directory.
class Run {
 public:
  Run(std::string subcommand, std::map<std::string, std::string> parameters, std::filesystem::path out_dir,
      bool selftest);

  bool selftest() const { return selftest_; }
  // The first table created is also printed to stdout.
  Table& table(const std::string& name, std::vector<std::string> columns);
  void json(const std::string& name, Json doc);
  void input(const std::filesystem::path& path);

  // |value - reference| <= tolerance, NaN fails.
  void check(const std::string& name, double value, double reference, double tolerance);
  void check(const std::string& name, bool ok);
  bool failed() const { return failed_; }

  // Writes everything; returns 0, or 1 if any check failed.
  int finish();

 private:
  std::string file_name(const std::string& name, const char* ext) const;

  std::string subcommand_;
  std::map<std::string, std::string> parameters_;
  std::filesystem::path out_dir_;
  bool selftest_;
  std::vector<Table> tables_;
  std::vector<std::pair<std::string, Json>> docs_;
  std::map<std::string, std::string> digests_;
  Table checks_;
  bool failed_ = false;
};

// Registers options on a subcommand and remembers their values for the
// manifest.
class Options {
 public:
  explicit Options(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& value, const std::string& help) {
    getters_.emplace_back(name, [&value] { return to_text(value); });
    return app_->add_option("--" + name, value, help)->capture_default_str();
  }
  CLI::Option* flag(const std::string& name, bool& value, const std::string& help) {
    getters_.emplace_back(name, [&value] { return to_text(value); });
    return app_->add_flag("--" + name, value, help);
  }
  std::map<std::string, std::string> values() const;
  CLI::App* app() const { return app_; }

 private:
  static std::string to_text(double v) { return format_double(v); }
  static std::string to_text(int v) { return std::to_string(v); }
  static std::string to_text(bool v) { return v ? "true" : "false"; }
  static std::string to_text(const std::string& v) { return v; }

  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<std::string()>>> getters_;
};

struct Command {
  std::string name;
  std::string help;
  // Declares options; returns the body, which runs after parsing.
  std::function<std::function<void(Run&)>(Options&)> setup;
};

// Accepts "3/2", "1.5" or "-2".
HalfInt parse_half(const std::string& text);

void add_spin_commands(std::vector<Command>& out);
void add_lattice_commands(std::vector<Command>& out);
void add_stat_commands(std::vector<Command>& out);
void add_nonequil_commands(std::vector<Command>& out);

// CODATA exact SI constants for --si.
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kLightSpeed = 299792458.0;
inline constexpr double kHbar = kPlanck / (2.0 * 3.14159265358979323846);

}  // namespace densfluct::cli
