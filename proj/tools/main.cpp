#include <cstdlib>
#include <iostream>
#include <memory>

#include "densfluct/error.hpp"
#include "run.hpp"

using namespace densfluct;
using namespace densfluct::cli;

namespace {

// Bad user input exits 2 like a flag error; anything else the computation
// raised exits 1.
bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidSector:
    case ErrorKind::UndefinedSpinRatio:
    case ErrorKind::UnsupportedSchedule:
    case ErrorKind::DegenerateDistribution:
    case ErrorKind::SizeLimit:
    case ErrorKind::OutOfRange:
    case ErrorKind::UnphysicalEnergy:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-density fluctuation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DENSFLUCT_VERSION);
  std::string out_dir;
  bool selftest = false;
  app.add_option("--out", out_dir, "Output directory (default: $DENSFLUCT_OUT or ./densfluct-out)");
  app.add_flag("--selftest", selftest, "Run the subcommand's oracle checks instead of a computation");

  std::vector<Command> commands;
  add_spin_commands(commands);
  add_lattice_commands(commands);
  add_stat_commands(commands);
  add_nonequil_commands(commands);

  struct Active {
    CLI::App* sub;
    std::unique_ptr<Options> options;
    std::function<void(Run&)> body;
  };
  std::vector<Active> active;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--selftest", selftest, "Run this subcommand's oracle checks");
    auto opts = std::make_unique<Options>(sub);
    auto body = c.setup(*opts);
    active.push_back({sub, std::move(opts), std::move(body)});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (out_dir.empty()) {
    const char* env = std::getenv("DENSFLUCT_OUT");
    out_dir = env && *env ? env : "densfluct-out";
  }
  for (auto& a : active) {
    if (!a.sub->parsed()) continue;
    try {
      auto params = a.options->values();
      params["selftest"] = selftest ? "true" : "false";
      Run run(a.sub->get_name(), std::move(params), out_dir, selftest);
      a.body(run);
      return run.finish();
    } catch (const Error& e) {
      std::cerr << "densfluct " << a.sub->get_name() << ": " << e.what() << '\n';
      return is_usage_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
      std::cerr << "densfluct " << a.sub->get_name() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
