// main.cpp — pointer_sim command line: premeasure | decohere | oracle | scan |
// envariance, each driven by a JSON config. Exit codes: 0 success, 2 config
// error, 3 numerical failure, 4 tolerance failure.
#include "run_config.hpp"

#include "pointer_sim/quadrature.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;  // empty = stdout
  std::optional<unsigned> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file")->required();
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
  cmd->add_option("--seed", args.seed, "override the config RNG seed");
}

int write_result(const psim::cli::CommandResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 3;
    }
    out << result.payload;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-level pre-measurement, thermal dephasing, and pointer-basis tools"};
  app.require_subcommand(1);

  std::map<std::string, CommonArgs> args;
  for (const char* name : {"premeasure", "decohere", "oracle", "scan", "envariance"})
    add_common(app.add_subcommand(name), args[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const CommonArgs& a = args[name];
  try {
    psim::cli::json cfg = psim::cli::load_config(a.config_path);
    psim::cli::CommandResult result;
    if (name == "premeasure") result = psim::cli::cmd_premeasure(cfg);
    else if (name == "decohere") result = psim::cli::cmd_decohere(cfg);
    else if (name == "oracle") result = psim::cli::cmd_oracle(cfg);
    else if (name == "scan") result = psim::cli::cmd_scan(cfg, a.seed);
    else result = psim::cli::cmd_envariance(cfg);
    return write_result(result, a.out_path);
  } catch (const psim::quad::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << " (estimate " << e.estimate
              << ", error bound " << e.error_bound << ")\n";
    return 3;
  } catch (const psim::cli::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
