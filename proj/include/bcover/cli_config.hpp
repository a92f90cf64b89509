#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bcover/geometry.hpp"
#include "bcover/probes.hpp"

namespace bcover {

// Every command line flag (without the leading dashes) is also a valid key of
// the JSON configuration file. Flags win over file values.
struct RunConfig {
  std::string command;
  std::string map = "paperF";
  Profile variant = Profile::Regularized;
  double slope = 1.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  int workers = 0;
  std::string timestamp;

  std::optional<Coords> point;
  std::optional<std::string> base;  // coordinates or "apex" / "unit-circle"
  std::optional<Box> window;
  std::optional<Box> search_window;
  std::optional<double> step;
  std::optional<double> probe_radius;
  std::optional<std::int64_t> n0;
  std::optional<std::string> reference;
  std::optional<std::vector<double>> deltas;
  std::optional<std::int64_t> samples;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> expect_count;
  std::optional<std::vector<double>> radii;
  std::optional<double> margin;
  std::optional<double> threshold;
  std::optional<std::vector<SpatialPoint>> poles;
  std::optional<std::vector<double>> sweep;
  std::optional<std::int64_t> targets;
  std::optional<double> tolerance;

  std::optional<double> assert_slope_max;
  std::optional<double> assert_slope_min;
  std::optional<double> assert_max_tube;
  std::optional<double> assert_min_fraction;
  std::optional<double> assert_max_mismatches;

  MapConfig map_config() const { return {slope, variant}; }
};

// Thrown for --help; carries the rendered usage text.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& command_names();

// args starts with the command name. Throws MapError(Usage) on any problem,
// naming the offending key.
RunConfig parse_config(const std::vector<std::string>& args, const std::optional<nlohmann::json>& file = std::nullopt);

// The resolved configuration keyed by flag name; feeding it back as a
// configuration file reproduces the run.
nlohmann::json config_echo(const RunConfig& cfg);

// Runs a command. Returns the exit code: 0 success, 1 usage, 2 a supplied
// threshold failed, 3 probe error. Errors are written to err as JSON.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point used by the tool: handles --config and --help.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcover
