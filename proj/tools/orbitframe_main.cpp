#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orbitframe/cli.hpp"
#include "orbitframe/errors.hpp"
#include "orbitframe/version.hpp"

namespace {

void print_error(const std::string& code, const std::string& message, const std::string& context) {
  const nlohmann::json err{{"code", code}, {"message", message}, {"context", context}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitframe: unit-disc sequence analysis, Hardy interpolation and "
               "operator-orbit frame experiments"};
  app.set_version_flag("--version", ORBITFRAME_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Execute one experiment from a JSON config");
  run_cmd->add_option("--config", config_path, "Path to the JSON experiment config")->required();

  std::string suite;
  std::string out_dir = "goldens";
  auto* goldens_cmd = app.add_subcommand("goldens", "Regenerate golden reference files");
  goldens_cmd->add_option("--suite", suite, "One of: carleson, frames, repr, hardy")->required();
  goldens_cmd->add_option("--out", out_dir, "Output directory (default: goldens)");

  CLI11_PARSE(app, argc, argv);

  const std::string context = run_cmd->parsed() ? "run --config " + config_path
                                                : "goldens --suite " + suite;
  try {
    if (run_cmd->parsed()) {
      const orbitframe::cli::RunReport report = orbitframe::cli::run_file(config_path);
      std::cout << report.stdout_json().dump() << "\n";
    } else {
      const auto files = orbitframe::cli::regenerate_goldens(suite, out_dir);
      nlohmann::json written = nlohmann::json::array();
      for (const auto& f : files) written.push_back(f.string());
      std::cout << nlohmann::json{{"suite", suite},
                                  {"files", written},
                                  {"version", ORBITFRAME_VERSION}}
                       .dump()
                << "\n";
    }
  } catch (const orbitframe::Error& e) {
    print_error(e.code(), e.what(), context);
    return 1;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what(), context);
    return 1;
  }
  return 0;
}
