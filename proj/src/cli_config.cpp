#include "bcover/cli_config.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bcover/error.hpp"
#include "bcover/report.hpp"

namespace bcover {
namespace {

using json = nlohmann::json;

[[noreturn]] void usage(const std::string& message) { throw MapError(ErrorCode::Usage, message); }

const std::vector<std::string> kCommonKeys{"map", "variant", "slope", "seed", "format", "out", "workers", "timestamp"};

const std::map<std::string, std::vector<std::string>>& command_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"eval", {"point"}},
      {"jet", {"point"}},
      {"preimage", {"point"}},
      {"index", {"base", "probe-radius", "n0"}},
      {"branch-scan", {"window", "step", "probe-radius", "reference", "assert-max-tube"}},
      {"continuity", {"base", "deltas", "samples"}},
      {"openness", {"base", "delta", "epsilon", "m", "assert-min-fraction"}},
      {"histogram", {"window", "m", "expect-count", "assert-min-fraction"}},
      {"distortion", {"point", "radii", "samples", "margin"}},
      {"growth", {"radii", "samples", "margin", "assert-slope-max", "assert-slope-min"}},
      {"poles", {"threshold", "window", "step", "poles", "sweep"}},
      {"oracle-check", {"window", "search-window", "step", "tolerance", "targets", "assert-max-mismatches"}},
      {"figure-data", {"radii"}},
  };
  return keys;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// File values become --key=value strings so that the same parser handles
// both sources.
std::string file_value_to_string(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += v[i].is_array() ? ";" : ",";
      s += file_value_to_string(key, v[i]);
    }
    return s;
  }
  usage("configuration key '" + key + "' has an unsupported value type");
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  while (begin < end && *begin == ' ') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    usage("--" + key + ": expected a finite number, got '" + text + "'");
  }
  return value;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    usage("--" + key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_double(key, part));
  if (values.empty()) usage("--" + key + ": expected a comma separated list of numbers");
  return values;
}

Box parse_window(const std::string& key, const std::string& text) {
  const std::vector<double> v = parse_list(key, text);
  Box box;
  if (v.size() == 4) {
    box = Box::planar(v[0], v[1], v[2], v[3]);
  } else if (v.size() == 6) {
    box = Box::spatial(v[0], v[1], v[2], v[3], v[4], v[5]);
  } else {
    usage("--" + key + ": expected 4 (planar) or 6 (spatial) bounds, got " + std::to_string(v.size()));
  }
  for (int a = 0; a < box.dim; ++a) {
    if (!(box.lo[a] <= box.hi[a])) usage("--" + key + ": bounds must be ordered lo,hi per axis");
  }
  return box;
}

std::vector<SpatialPoint> parse_points(const std::string& key, const std::string& text) {
  std::vector<SpatialPoint> pts;
  for (const std::string& part : split(text, ';')) {
    const std::vector<double> v = parse_list(key, part);
    if (v.size() != 3) usage("--" + key + ": each point needs 3 coordinates");
    pts.push_back({v[0], v[1], v[2]});
  }
  return pts;
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string default_reference(const std::string& map) {
  if (map == "paperF-planar") return "apex";
  if (map == "paperF") return "unit-circle";
  if (map == "winding3") return "z-axis";
  if (map == "remark") return "unit-circle-xz";
  return "none";
}

int map_dimension(const std::string& name) {
  return (name == "paperF-planar" || name == "winding2" || name == "identity2") ? 2 : 3;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : command_keys()) n.push_back(k);
    return n;
  }();
  return names;
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<json>& file) {
  if (args.empty()) usage("missing command; expected one of the documented commands");
  const std::string& command = args.front();
  const auto keys_it = command_keys().find(command);
  if (keys_it == command_keys().end()) usage("unknown command '" + command + "'");

  std::vector<std::string> keys = kCommonKeys;
  keys.insert(keys.end(), keys_it->second.begin(), keys_it->second.end());

  // File entries first so that later command line flags take precedence.
  std::vector<std::string> argv{command};
  if (file) {
    if (!file->is_object()) usage("configuration file must hold a JSON object");
    for (const auto& [key, value] : file->items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        usage("unknown configuration key '" + key + "' for command " + command);
      }
      argv.push_back("--" + key + "=" + file_value_to_string(key, value));
    }
  }
  argv.insert(argv.end(), args.begin() + 1, args.end());

  CLI::App app{"Branched cover evaluation and verification probes", "bcover"};
  app.require_subcommand(1);
  std::map<std::string, std::string> raw;
  CLI::App* sub = app.add_subcommand(command);
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (const std::string& key : keys) sub->add_option("--" + key, raw[key]);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(sub->help());
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }
  auto given = [&](const std::string& key) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    return opt != nullptr && opt->count() > 0;
  };

  RunConfig cfg;
  cfg.command = command;
  if (given("map")) cfg.map = raw["map"];
  if (!make_map(cfg.map, MapConfig{}) && cfg.map != "sphere-inversion") usage("--map: unknown map '" + cfg.map + "'");
  if (cfg.map == "sphere-inversion") usage("--map: sphere-inversion is available through the library only");
  if (given("variant")) {
    const auto p = parse_profile(raw["variant"]);
    if (!p) usage("--variant: expected literal or regularized, got '" + raw["variant"] + "'");
    cfg.variant = *p;
  }
  if (given("slope")) {
    cfg.slope = parse_double("slope", raw["slope"]);
    if (!(cfg.slope > 0.0)) usage("--slope: must be positive");
  }
  if (given("seed")) {
    const std::int64_t s = parse_int("seed", raw["seed"]);
    if (s < 0) usage("--seed: must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (given("format")) cfg.format = raw["format"];
  if (cfg.format != "json" && cfg.format != "csv") usage("--format: expected json or csv");
  if (cfg.format == "csv" && command != "figure-data" && command != "distortion") {
    usage("--format: csv output is available for figure-data and distortion");
  }
  if (given("out")) cfg.out = raw["out"];
  if (given("workers")) {
    cfg.workers = static_cast<int>(parse_int("workers", raw["workers"]));
    if (cfg.workers < 0) usage("--workers: must be non-negative");
  }
  cfg.timestamp = given("timestamp") ? raw["timestamp"] : now_utc();

  const int dim = map_dimension(cfg.map);
  auto get_double = [&](const std::string& key) -> std::optional<double> {
    if (!given(key)) return std::nullopt;
    return parse_double(key, raw[key]);
  };
  auto get_int = [&](const std::string& key) -> std::optional<std::int64_t> {
    if (!given(key)) return std::nullopt;
    return parse_int(key, raw[key]);
  };
  auto positive = [&](const std::string& key, const std::optional<double>& v) {
    if (v && !(*v > 0.0)) usage("--" + key + ": must be positive");
  };
  auto positive_int = [&](const std::string& key, const std::optional<std::int64_t>& v) {
    if (v && *v < 1) usage("--" + key + ": must be at least 1");
  };
  auto window_for = [&](const std::string& key) -> std::optional<Box> {
    if (!given(key)) return std::nullopt;
    Box b = parse_window(key, raw[key]);
    if (b.dim != dim) usage("--" + key + ": window dimension does not match map " + cfg.map);
    return b;
  };

  if (given("point")) {
    cfg.point = parse_list("point", raw["point"]);
    if (static_cast<int>(cfg.point->size()) != dim) usage("--point: expected " + std::to_string(dim) + " coordinates");
  }
  if (given("base")) {
    cfg.base = raw["base"];
    if (*cfg.base != "apex" && *cfg.base != "unit-circle") {
      if (static_cast<int>(parse_list("base", *cfg.base).size()) != dim) {
        usage("--base: expected apex, unit-circle or " + std::to_string(dim) + " coordinates");
      }
    }
  }
  cfg.window = window_for("window");
  cfg.search_window = window_for("search-window");
  cfg.step = get_double("step");
  positive("step", cfg.step);
  cfg.probe_radius = get_double("probe-radius");
  positive("probe-radius", cfg.probe_radius);
  cfg.n0 = get_int("n0");
  if (cfg.n0 && *cfg.n0 < 3) usage("--n0: must be at least 3");
  if (given("reference")) cfg.reference = raw["reference"];
  if (given("deltas")) cfg.deltas = parse_list("deltas", raw["deltas"]);
  cfg.samples = get_int("samples");
  positive_int("samples", cfg.samples);
  cfg.delta = get_double("delta");
  positive("delta", cfg.delta);
  cfg.epsilon = get_double("epsilon");
  positive("epsilon", cfg.epsilon);
  cfg.m = get_int("m");
  positive_int("m", cfg.m);
  cfg.expect_count = get_int("expect-count");
  if (given("radii")) cfg.radii = parse_list("radii", raw["radii"]);
  cfg.margin = get_double("margin");
  cfg.threshold = get_double("threshold");
  positive("threshold", cfg.threshold);
  if (given("poles")) cfg.poles = parse_points("poles", raw["poles"]);
  if (given("sweep")) cfg.sweep = parse_list("sweep", raw["sweep"]);
  cfg.targets = get_int("targets");
  positive_int("targets", cfg.targets);
  cfg.tolerance = get_double("tolerance");
  positive("tolerance", cfg.tolerance);
  cfg.assert_slope_max = get_double("assert-slope-max");
  cfg.assert_slope_min = get_double("assert-slope-min");
  cfg.assert_max_tube = get_double("assert-max-tube");
  cfg.assert_min_fraction = get_double("assert-min-fraction");
  cfg.assert_max_mismatches = get_double("assert-max-mismatches");

  // Per-command requirements and defaults; the echo shows resolved values.
  auto require = [&](bool present, const std::string& key) {
    if (!present) usage("command " + command + " requires --" + key);
  };
  if (command == "eval" || command == "jet" || command == "preimage") {
    require(cfg.point.has_value(), "point");
  } else if (command == "index") {
    require(cfg.base.has_value(), "base");
    if (!cfg.probe_radius) cfg.probe_radius = 1e-3;
    if (!cfg.n0) cfg.n0 = kDefaultIndexSamples;
  } else if (command == "branch-scan") {
    require(cfg.window.has_value(), "window");
    require(cfg.step.has_value(), "step");
    if (!cfg.probe_radius) cfg.probe_radius = 3.0 * *cfg.step;
    if (!cfg.reference) cfg.reference = default_reference(cfg.map);
    static const std::vector<std::string> refs{"none", "apex", "unit-circle", "unit-circle-xz", "z-axis"};
    if (std::find(refs.begin(), refs.end(), *cfg.reference) == refs.end()) {
      usage("--reference: expected one of none, apex, unit-circle, unit-circle-xz, z-axis");
    }
  } else if (command == "continuity") {
    require(cfg.base.has_value(), "base");
    if (!cfg.deltas) cfg.deltas = std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4};
    if (!cfg.samples) cfg.samples = 64;
  } else if (command == "openness") {
    require(cfg.base.has_value(), "base");
    if (!cfg.delta) cfg.delta = 1e-2;
    if (!cfg.epsilon) cfg.epsilon = 1e-3;
    if (!cfg.m) cfg.m = 500;
  } else if (command == "histogram") {
    require(cfg.window.has_value(), "window");
    if (!cfg.m) cfg.m = 10000;
    if (!cfg.expect_count) cfg.expect_count = 2;
  } else if (command == "distortion") {
    if (!cfg.point && !cfg.radii) usage("command distortion requires --point or --radii");
    if (cfg.point && dim != 3) usage("--point: distortion is computed for spatial maps");
    if (!cfg.samples) cfg.samples = 2000;
    if (!cfg.margin) cfg.margin = kDefaultBoundaryMargin;
  } else if (command == "growth") {
    if (!cfg.radii) cfg.radii = std::vector<double>{2, 4, 8, 16, 32, 64, 128, 256};
    if (!cfg.samples) cfg.samples = 2000;
    if (!cfg.margin) cfg.margin = kDefaultBoundaryMargin;
  } else if (command == "poles") {
    require(cfg.window.has_value(), "window");
    require(cfg.step.has_value(), "step");
    if (!cfg.threshold) cfg.threshold = 100.0;
    if (!cfg.poles) cfg.poles = std::vector<SpatialPoint>{SpatialPoint{}};
  } else if (command == "oracle-check") {
    if (dim != 2 && !cfg.window) usage("command oracle-check requires --window for spatial maps");
    if (!cfg.window) cfg.window = Box::planar(0.05, 8.0, -6.0, 6.0);
    if (!cfg.search_window) {
      if (dim != 2) usage("command oracle-check requires --search-window for spatial maps");
      cfg.search_window = Box::planar(0.01, 21.0, -7.5, 7.5);
    }
    if (!cfg.step) cfg.step = 1e-2;
    if (!cfg.tolerance) cfg.tolerance = 10.0 * *cfg.step;
    if (!cfg.targets) cfg.targets = 200;
  } else if (command == "figure-data") {
    if (!cfg.radii) cfg.radii = std::vector<double>{0.5, 1.0, 2.0, 3.0};
  }
  if (cfg.radii) {
    for (double r : *cfg.radii) {
      if (!(r > 0.0)) usage("--radii: values must be positive");
    }
    if (command == "growth") {
      if (cfg.radii->size() < 4) {
        usage("--radii: growth needs at least 4 radii, got " + std::to_string(cfg.radii->size()));
      }
      if (!std::is_sorted(cfg.radii->begin(), cfg.radii->end(), std::less_equal<>())) {
        usage("--radii: growth radii must be strictly increasing");
      }
    }
  }
  return cfg;
}

namespace {

json window_json(const Box& b) {
  json arr = json::array();
  for (int a = 0; a < b.dim; ++a) {
    arr.push_back(b.lo[a]);
    arr.push_back(b.hi[a]);
  }
  return arr;
}

}  // namespace

json config_echo(const RunConfig& cfg) {
  json j{{"map", cfg.map},
         {"variant", std::string(to_string(cfg.variant))},
         {"slope", cfg.slope},
         {"seed", cfg.seed},
         {"format", cfg.format},
         {"timestamp", cfg.timestamp}};
  if (!cfg.out.empty()) j["out"] = cfg.out;
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("point", cfg.point);
  put("base", cfg.base);
  if (cfg.window) j["window"] = window_json(*cfg.window);
  if (cfg.search_window) j["search-window"] = window_json(*cfg.search_window);
  put("step", cfg.step);
  put("probe-radius", cfg.probe_radius);
  put("n0", cfg.n0);
  put("reference", cfg.reference);
  put("deltas", cfg.deltas);
  put("samples", cfg.samples);
  put("delta", cfg.delta);
  put("epsilon", cfg.epsilon);
  put("m", cfg.m);
  put("expect-count", cfg.expect_count);
  put("radii", cfg.radii);
  put("margin", cfg.margin);
  put("threshold", cfg.threshold);
  if (cfg.poles) {
    json arr = json::array();
    for (const SpatialPoint& p : *cfg.poles) arr.push_back(json::array({p.x, p.y, p.z}));
    j["poles"] = arr;
  }
  put("sweep", cfg.sweep);
  put("targets", cfg.targets);
  put("tolerance", cfg.tolerance);
  put("assert-slope-max", cfg.assert_slope_max);
  put("assert-slope-min", cfg.assert_slope_min);
  put("assert-max-tube", cfg.assert_max_tube);
  put("assert-min-fraction", cfg.assert_min_fraction);
  put("assert-max-mismatches", cfg.assert_max_mismatches);
  return j;
}

namespace {

void write_error(std::ostream& err, const std::string& code, const std::string& message, int exit_code) {
  err << json{{"error", code}, {"message", message}, {"exit_code", exit_code}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    out << "usage: bcover <command> [--key=value ...] [--config=file.json]\ncommands:";
    for (const std::string& c : command_names()) out << ' ' << c;
    out << '\n';
    if (args.empty()) return 1;
    return 0;
  }
  std::vector<std::string> rest;
  std::optional<json> file;
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& a = args[i];
      std::string path;
      if (a.rfind("--config=", 0) == 0) {
        path = a.substr(9);
      } else if (a == "--config" && i + 1 < args.size()) {
        path = args[++i];
      } else {
        rest.push_back(a);
        continue;
      }
      std::ifstream in(path);
      if (!in) usage("--config: cannot open '" + path + "'");
      try {
        json doc = json::parse(in);
        // A saved report carries its configuration under "config".
        if (doc.contains("payload") && doc.contains("config")) doc = doc["config"];
        file = std::move(doc);
      } catch (const json::parse_error& e) {
        usage("--config: " + std::string(e.what()));
      }
    }
    const RunConfig cfg = parse_config(rest, file);
    return execute(cfg, out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const MapError& e) {
    const int code = e.code() == ErrorCode::Usage ? 1 : 3;
    write_error(err, std::string(to_string(e.code())), e.what(), code);
    return code;
  }
}

}  // namespace bcover
