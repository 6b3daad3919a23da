#include "rwk/commands.hpp"
#include "rwk/errors.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("rwk");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("RWK_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(level));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rwk::ConfigError(path + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Block constructions, witness searches and preimage transforms over Z and Z^v"};
  app.set_version_flag("--version", std::string(rwk::cli::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  rwk::cli::Options options;
  std::uint64_t seed = 0;
  std::uint64_t max_points = rwk::kDefaultMaxPoints;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"blocks", "Divisibility blocks for a list of sequences"},
      {"solve", "Denominator clearing and constant-image solutions A x = (a, ..., a)"},
      {"witness", "Canonical witness searches (cr, matrix, j, ps, estimate_r)"},
      {"preimage", "Transform witnesses for B into witnesses for {y : A y in B^u}"},
      {"chain", "Decreasing chains, their preimages and shift indices"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Config JSON (a report JSON with --verify-only)")->required();
    sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    sub->add_flag("--verify-only", options.verify_only, "Re-check a previously written report");
    sub->add_option("--seed-override", seed, "Replace every seed in the config");
    sub->add_option("--max-points", max_points, "Cap on enumerated points")->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);
  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed-override") > 0) options.seed_override = seed;
  options.max_points = max_points;

  rwk::cli::Report report;
  try {
    const rwk::io::json config = rwk::io::parse_json(read_file(config_path), config_path);
    report = rwk::cli::run_command(chosen->get_name(), config, options);
  } catch (const rwk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rwk::cli::kExitBreach;
  }

  const std::string text = report.payload.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    for (const auto& line : report.summary) std::cerr << line << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: " << out_path << ": cannot open for writing\n";
      return rwk::cli::kExitBreach;
    }
    out << text;
    for (const auto& line : report.summary) std::cout << line << '\n';
  }
  return report.exit_code;
}
