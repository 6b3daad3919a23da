#pragma once

/**
 * @file commands.hpp
 * @brief The five driver commands behind the `rwk` executable.
 *
 * Every command takes a JSON config of the form {"instances": [...]} and
 * returns a report whose payload echoes the config, lists one result per
 * instance in config order, and carries counters and a version stamp.
 * With verify_only set, the input is a previously written report and the
 * command re-checks its recorded results without searching again.
 */

#include "rwk/serialize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExhausted = 1;
inline constexpr int kExitBreach = 2;

inline constexpr std::string_view kVersion = "0.1.0";

struct Options {
  bool verify_only = false;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t max_points = kDefaultMaxPoints;
};

struct Report {
  io::json payload;
  int exit_code = kExitOk;
  std::vector<std::string> summary;  ///< human-readable lines
};

/// Replaces the value of every "seed" key, at any depth.
io::json apply_seed_override(io::json config, std::uint64_t seed);

Report cmd_blocks(const io::json& config, const Options& options);
Report cmd_solve(const io::json& config, const Options& options);
Report cmd_witness(const io::json& config, const Options& options);
Report cmd_preimage(const io::json& config, const Options& options);
Report cmd_chain(const io::json& config, const Options& options);

/// Dispatches by name. Config errors and invariant breaches become reports
/// with exit code 2 instead of exceptions.
Report run_command(std::string_view name, const io::json& config, const Options& options);

}  // namespace rwk::cli
