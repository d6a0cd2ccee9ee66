// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "iosim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "iosim/csv.hpp"

namespace iosim {

namespace {

std::string describe(std::size_t line, const std::string& key, const std::string& message) {
  std::string out = "config";
  if (line > 0) out += " line " + std::to_string(line);
  if (!key.empty()) out += " [" + key + "]";
  return out + ": " + message;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Value {
  std::string text;  // trimmed, quotes removed for words
  bool is_list = false;
  std::vector<std::string> items;
};

class Reader {
 public:
  Reader(std::size_t line, std::string key, Value value)
      : line_(line), key_(std::move(key)), value_(std::move(value)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(line_, key_, message);
  }

  double number() const {
    if (value_.is_list) fail("expected a number, got a list");
    return parse_number(value_.text);
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("must be > 0");
    return v;
  }

  std::size_t count() const {
    const double v = number();
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) fail("expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  int small_int() const {
    const std::size_t v = count();
    if (v > 1'000'000) fail("value too large");
    return static_cast<int>(v);
  }

  std::uint64_t u64() const {
    if (value_.is_list) fail("expected an integer, got a list");
    std::uint64_t v = 0;
    const char* b = value_.text.data();
    const char* e = b + value_.text.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e) fail("expected an unsigned 64-bit integer");
    return v;
  }

  bool boolean() const {
    if (value_.text == "true") return true;
    if (value_.text == "false") return false;
    fail("expected true or false");
  }

  std::string word() const {
    if (value_.is_list) fail("expected a word, got a list");
    return value_.text;
  }

  Point3 point() const {
    if (!value_.is_list || value_.items.size() != 3) fail("expected a list of three numbers");
    return {parse_number(value_.items[0]), parse_number(value_.items[1]),
            parse_number(value_.items[2])};
  }

  std::vector<std::size_t> counts() const {
    if (!value_.is_list) fail("expected a list");
    std::vector<std::size_t> out;
    for (const std::string& item : value_.items) {
      const double v = parse_number(item);
      if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) fail("list entries must be integers >= 1");
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  template <class F>
  auto parsed(F&& f) const {
    try {
      return f(word());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  double parse_number(const std::string& s) const {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e || std::isnan(v)) {
      fail("expected a number, got '" + s + "'");
    }
    return v;
  }

  std::size_t line_;
  std::string key_;
  Value value_;
};

Value parse_value(std::string_view raw, std::size_t line, const std::string& key) {
  Value v;
  raw = trim(raw);
  if (raw.empty()) throw ConfigError(line, key, "missing value");
  if (raw.front() == '[') {
    if (raw.back() != ']') throw ConfigError(line, key, "unterminated list");
    v.is_list = true;
    std::string_view body = trim(raw.substr(1, raw.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const std::string_view item = trim(body.substr(0, comma));
      if (item.empty()) throw ConfigError(line, key, "empty list entry");
      v.items.emplace_back(item);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
      if (trim(body).empty()) throw ConfigError(line, key, "trailing comma in list");
    }
    v.text = std::string(raw);
    return v;
  }
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw ConfigError(line, key, "unterminated string");
    v.text = std::string(raw.substr(1, raw.size() - 2));
    return v;
  }
  v.text = std::string(raw);
  return v;
}

using Setter = std::function<void(ScenarioConfig&, const Reader&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"rf.wavelength", [](ScenarioConfig& c, const Reader& r) { c.rf.wavelength = r.positive(); }},
      {"rf.rician_kappa", [](ScenarioConfig& c, const Reader& r) { c.rf.rician_kappa = r.number(); }},
      {"rf.tx_gain", [](ScenarioConfig& c, const Reader& r) { c.rf.tx_gain = r.number(); }},
      {"rf.rx_gain", [](ScenarioConfig& c, const Reader& r) { c.rf.rx_gain = r.number(); }},
      {"rf.element_gain", [](ScenarioConfig& c, const Reader& r) { c.rf.element_gain = r.number(); }},
      {"rf.tx_pattern_gain",
       [](ScenarioConfig& c, const Reader& r) { c.rf.tx_pattern_gain = r.number(); }},
      {"rf.rx_pattern_gain",
       [](ScenarioConfig& c, const Reader& r) { c.rf.rx_pattern_gain = r.number(); }},
      {"rf.alpha", [](ScenarioConfig& c, const Reader& r) { c.rf.alpha = r.number(); }},
      {"rf.tx_power_dbm",
       [](ScenarioConfig& c, const Reader& r) { c.rf.tx_power = dbm_to_watts(r.number()); }},
      {"rf.tx_power_w", [](ScenarioConfig& c, const Reader& r) { c.rf.tx_power = r.number(); }},
      {"rf.noise_power_dbm",
       [](ScenarioConfig& c, const Reader& r) { c.rf.noise_power = dbm_to_watts(r.number()); }},
      {"rf.noise_power_w", [](ScenarioConfig& c, const Reader& r) { c.rf.noise_power = r.number(); }},
      {"rf.epsilon", [](ScenarioConfig& c, const Reader& r) { c.rf.epsilon = r.number(); }},
      {"rf.gamma_sq", [](ScenarioConfig& c, const Reader& r) { c.rf.gamma_sq = r.number(); }},
      {"rf.nlos_exponent",
       [](ScenarioConfig& c, const Reader& r) { c.rf.nlos_exponent = r.number(); }},
      {"rf.nlos_ref_gain",
       [](ScenarioConfig& c, const Reader& r) { c.rf.nlos_ref_gain = r.number(); }},
      {"rf.direct_blocked",
       [](ScenarioConfig& c, const Reader& r) { c.rf.direct_blocked = r.boolean(); }},
      {"panel.rows", [](ScenarioConfig& c, const Reader& r) { c.panel.rows = r.count(); }},
      {"panel.cols", [](ScenarioConfig& c, const Reader& r) { c.panel.cols = r.count(); }},
      {"panel.delta_x", [](ScenarioConfig& c, const Reader& r) { c.panel.delta_x = r.number(); }},
      {"panel.delta_y", [](ScenarioConfig& c, const Reader& r) { c.panel.delta_y = r.number(); }},
      {"panel.center", [](ScenarioConfig& c, const Reader& r) { c.panel.center = r.point(); }},
      {"panel.normal", [](ScenarioConfig& c, const Reader& r) { c.panel.normal = r.point(); }},
      {"panel.n_diodes", [](ScenarioConfig& c, const Reader& r) { c.panel.n_diodes = r.small_int(); }},
      {"panel.s_a", [](ScenarioConfig& c, const Reader& r) { c.panel.s_a = r.small_int(); }},
      {"bs.position", [](ScenarioConfig& c, const Reader& r) { c.bs = r.point(); }},
      {"mu.center", [](ScenarioConfig& c, const Reader& r) { c.mu.center = r.point(); }},
      {"mu.radius", [](ScenarioConfig& c, const Reader& r) { c.mu.radius = r.number(); }},
      {"experiment.n_trials",
       [](ScenarioConfig& c, const Reader& r) { c.experiment.n_trials = r.count(); }},
      {"experiment.master_seed",
       [](ScenarioConfig& c, const Reader& r) { c.experiment.master_seed = r.u64(); }},
      {"experiment.sizes", [](ScenarioConfig& c, const Reader& r) { c.experiment.sizes = r.counts(); }},
      {"experiment.candidate_set",
       [](ScenarioConfig& c, const Reader& r) {
         c.experiment.candidate_set = r.parsed(parse_candidate_mode);
       }},
      {"experiment.init",
       [](ScenarioConfig& c, const Reader& r) { c.experiment.init = r.parsed(parse_init_mode); }},
      {"experiment.bound",
       [](ScenarioConfig& c, const Reader& r) { c.experiment.bound = r.parsed(parse_bound_kind); }},
      {"heatmap.x_min", [](ScenarioConfig& c, const Reader& r) { c.experiment.grid.x_min = r.number(); }},
      {"heatmap.x_max", [](ScenarioConfig& c, const Reader& r) { c.experiment.grid.x_max = r.number(); }},
      {"heatmap.y_min", [](ScenarioConfig& c, const Reader& r) { c.experiment.grid.y_min = r.number(); }},
      {"heatmap.y_max", [](ScenarioConfig& c, const Reader& r) { c.experiment.grid.y_max = r.number(); }},
      {"heatmap.step", [](ScenarioConfig& c, const Reader& r) { c.experiment.grid.step = r.number(); }},
  };
  return table;
}

// Keys that set the same quantity in different units.
const std::map<std::string, std::string, std::less<>>& unit_aliases() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"rf.tx_power_dbm", "rf.tx_power"},
      {"rf.tx_power_w", "rf.tx_power"},
      {"rf.noise_power_dbm", "rf.noise_power"},
      {"rf.noise_power_w", "rf.noise_power"},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error(describe(line, key, message)), line_(line), key_(std::move(key)) {}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::set<std::string, std::less<>> seen;
  bool ref_gain_given = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    // '#' inside a quoted word is kept.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    const auto setter = setters().find(key);
    if (setter == setters().end()) throw ConfigError(line_no, key, "unknown key");

    const auto alias = unit_aliases().find(key);
    const std::string canonical = alias == unit_aliases().end() ? key : alias->second;
    if (!seen.insert(canonical).second) {
      throw ConfigError(line_no, key, "set more than once");
    }
    if (key == "rf.nlos_ref_gain") ref_gain_given = true;

    setter->second(config, Reader(line_no, key, parse_value(line.substr(eq + 1), line_no, key)));
  }
  if (!ref_gain_given) config.rf.nlos_ref_gain = free_space_gain_1m(config.rf.wavelength);

  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(0, msg.substr(0, msg.find(' ')), msg);
  }
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& c) {
  std::ostringstream out;
  auto num = [](double v) { return format_double(v); };
  auto pt = [&](Point3 p) { return "[" + num(p.x) + ", " + num(p.y) + ", " + num(p.z) + "]"; };
  const RfConstants& rf = c.rf;
  out << "rf.wavelength = " << num(rf.wavelength) << '\n'
      << "rf.rician_kappa = " << num(rf.rician_kappa) << '\n'
      << "rf.tx_gain = " << num(rf.tx_gain) << '\n'
      << "rf.rx_gain = " << num(rf.rx_gain) << '\n'
      << "rf.element_gain = " << num(rf.element_gain) << '\n'
      << "rf.tx_pattern_gain = " << num(rf.tx_pattern_gain) << '\n'
      << "rf.rx_pattern_gain = " << num(rf.rx_pattern_gain) << '\n'
      << "rf.alpha = " << num(rf.alpha) << '\n'
      << "rf.tx_power_w = " << num(rf.tx_power) << '\n'
      << "rf.noise_power_w = " << num(rf.noise_power) << '\n'
      << "rf.epsilon = " << num(rf.epsilon) << '\n'
      << "rf.gamma_sq = " << num(rf.gamma_sq) << '\n'
      << "rf.nlos_exponent = " << num(rf.nlos_exponent) << '\n'
      << "rf.nlos_ref_gain = " << num(rf.nlos_ref_gain) << '\n'
      << "rf.direct_blocked = " << (rf.direct_blocked ? "true" : "false") << '\n';
  const PanelGeometry& p = c.panel;
  out << "panel.rows = " << p.rows << '\n'
      << "panel.cols = " << p.cols << '\n'
      << "panel.delta_x = " << num(p.delta_x) << '\n'
      << "panel.delta_y = " << num(p.delta_y) << '\n'
      << "panel.center = " << pt(p.center) << '\n'
      << "panel.normal = " << pt(p.normal) << '\n'
      << "panel.n_diodes = " << p.n_diodes << '\n'
      << "panel.s_a = " << p.s_a << '\n';
  out << "bs.position = " << pt(c.bs) << '\n';
  out << "mu.center = " << pt(c.mu.center) << '\n' << "mu.radius = " << num(c.mu.radius) << '\n';
  const ExperimentParams& e = c.experiment;
  out << "experiment.n_trials = " << e.n_trials << '\n'
      << "experiment.master_seed = " << e.master_seed << '\n'
      << "experiment.sizes = [";
  for (std::size_t i = 0; i < e.sizes.size(); ++i) out << (i ? ", " : "") << e.sizes[i];
  out << "]\n"
      << "experiment.candidate_set = " << to_string(e.candidate_set) << '\n'
      << "experiment.init = " << to_string(e.init) << '\n'
      << "experiment.bound = " << to_string(e.bound) << '\n';
  const HeatmapGrid& g = e.grid;
  out << "heatmap.x_min = " << num(g.x_min) << '\n'
      << "heatmap.x_max = " << num(g.x_max) << '\n'
      << "heatmap.y_min = " << num(g.y_min) << '\n'
      << "heatmap.y_max = " << num(g.y_max) << '\n'
      << "heatmap.step = " << num(g.step) << '\n';
  return out.str();
}

}  // namespace iosim
