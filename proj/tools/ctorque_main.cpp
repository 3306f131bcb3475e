// ctorque: Casimir torque between anisotropic planar mirrors.
//
//   ctorque --config run.json [--output table.csv] [--quiet]
//
// Exit status: 0 success, 1 computation failure, 2 configuration error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ctorque/config.hpp"
#include "ctorque/errors.hpp"
#include "ctorque/runner.hpp"

int main(int argc, char** argv) {
  using namespace ctorque;

  CLI::App app{"Casimir torque between anisotropic planar mirrors (1D, T = 0)"};
  std::string config_path;
  std::string output_path;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--output", output_path, "CSV output path ('-' for stdout); overrides the config");
  app.add_flag("--quiet", quiet, "suppress the summary on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfigError;
  }

  cli::RunConfig cfg;
  try {
    cfg = cli::load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "ctorque: " << e.what() << '\n';
    return cli::kExitConfigError;
  }
  if (!output_path.empty()) cfg.output = output_path;

  cli::RunOutcome outcome;
  try {
    outcome = cli::run(cfg);
  } catch (const Error& e) {
    std::cerr << "ctorque: " << e.what() << '\n';
    return cli::kExitComputationFailure;
  }

  if (cfg.output.empty() || cfg.output == "-") {
    cli::write_csv(std::cout, outcome.table);
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "ctorque: cannot open output file '" << cfg.output << "'\n";
      return cli::kExitComputationFailure;
    }
    cli::write_csv(out, outcome.table);
    if (!out) {
      std::cerr << "ctorque: write to '" << cfg.output << "' failed\n";
      return cli::kExitComputationFailure;
    }
  }

  if (!quiet) {
    std::size_t failed = 0;
    for (const auto& row : outcome.table.rows) {
      const auto* status = std::get_if<std::string>(&row.back());
      if (status && *status != "ok") ++failed;
    }
    std::cerr << "ctorque " << cli::to_string(cfg.command) << ": " << outcome.table.rows.size() << " rows, "
              << failed << " failed" << (outcome.success ? "" : " (run FAILED)") << '\n';
  }
  return outcome.exit_status();
}
