#include "euler1d/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>

namespace euler1d {

namespace {

using nlohmann::json;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario",
       {"name", "kind", "u0", "eta0", "m0", "amplitude", "width", "entropy_amplitude", "entropy_width"}},
      {"gas", {"gamma", "K", "c_v"}},
      {"grid", {"x_min", "x_max", "n", "boundary"}},
      {"numerics", {"stencil_order", "cfl", "hyperdissipation"}},
      {"time", {"horizon", "snapshot_interval"}},
      {"diagnostics",
       {"fit_window", "margin", "M_override", "smoothness_threshold", "vacuum_fraction", "field_stride",
        "trace_seeds", "trace_start", "oracle_horizon", "oracle_threshold", "oracle_improvement",
        "path_tolerance"}},
      {"output", {"dir"}},
  };
  return s;
}

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {}

  template <class T>
  void get(const char* key, T& out) const {
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError(field(key), "expected a number");
        out = it->template get<double>();
      } else if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ConfigError(field(key), "expected an integer");
        out = it->template get<int>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw ConfigError(field(key), "expected a string");
        out = it->template get<std::string>();
      } else {
        out = it->template get<T>();
      }
    } catch (const json::exception& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  template <class T>
  void get_optional(const char* key, std::optional<T>& out) const {
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    T v{};
    get(key, v);
    out = v;
  }

  std::string field(const char* key) const { return path_ + "." + key; }

 private:
  const json& obj_;
  std::string path_;
};

void check_keys(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [section, body] : doc.items()) {
    auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(section, "unknown key");
    if (!body.is_object()) throw ConfigError(section, "expected an object");
    for (const auto& [key, value] : body.items()) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }
}

const json& section(const json& doc, const char* name) {
  static const json empty = json::object();
  auto it = doc.find(name);
  return it == doc.end() ? empty : *it;
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.horizon = scenario.horizon;
  o.snapshot_interval = scenario.snapshot_interval;
  o.smoothness_threshold = diagnostics.smoothness_threshold;
  o.vacuum_fraction = diagnostics.vacuum_fraction;
  return o;
}

RunConfig parse_config(const json& doc) {
  check_keys(doc);
  RunConfig c;
  auto& sc = c.scenario;

  Reader scenario(section(doc, "scenario"), "scenario");
  scenario.get("name", sc.name);
  std::string kind = to_string(sc.kind);
  scenario.get("kind", kind);
  try {
    sc.kind = scenario_kind_from_string(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario.kind", e.what());
  }
  scenario.get("u0", sc.u0);
  scenario.get_optional("eta0", sc.eta0);
  scenario.get("m0", sc.m0);
  scenario.get("amplitude", sc.amplitude);
  scenario.get("width", sc.width);
  scenario.get("entropy_amplitude", sc.entropy_amplitude);
  scenario.get("entropy_width", sc.entropy_width);

  Reader gas(section(doc, "gas"), "gas");
  gas.get("gamma", sc.gas.gamma);
  gas.get("K", sc.gas.K);
  gas.get("c_v", sc.gas.c_v);

  Reader grid(section(doc, "grid"), "grid");
  grid.get("x_min", sc.grid.x_min);
  grid.get("x_max", sc.grid.x_max);
  grid.get("n", sc.grid.n);
  std::string boundary = to_string(sc.grid.boundary);
  grid.get("boundary", boundary);
  try {
    sc.grid.boundary = boundary_from_string(boundary);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid.boundary", e.what());
  }

  Reader numerics(section(doc, "numerics"), "numerics");
  numerics.get("stencil_order", c.numerics.stencil_order);
  numerics.get("cfl", c.numerics.cfl);
  numerics.get("hyperdissipation", c.numerics.hyperdissipation);

  Reader time(section(doc, "time"), "time");
  time.get("horizon", sc.horizon);
  time.get("snapshot_interval", sc.snapshot_interval);

  auto& d = c.diagnostics;
  Reader diag(section(doc, "diagnostics"), "diagnostics");
  std::vector<double> window{d.fit_t_a, d.fit_t_b};
  diag.get("fit_window", window);
  require(window.size() == 2, "diagnostics.fit_window", "expected [t_a, t_b]");
  d.fit_t_a = window[0];
  d.fit_t_b = window[1];
  diag.get("margin", d.margin);
  diag.get_optional("M_override", d.M_override);
  diag.get("smoothness_threshold", d.smoothness_threshold);
  diag.get("vacuum_fraction", d.vacuum_fraction);
  diag.get("field_stride", d.field_stride);
  diag.get("trace_seeds", d.trace_seeds);
  diag.get("trace_start", d.trace_start);
  diag.get("oracle_horizon", d.oracle_horizon);
  diag.get("oracle_threshold", d.oracle_threshold);
  diag.get("oracle_improvement", d.oracle_improvement);
  diag.get("path_tolerance", d.path_tolerance);

  Reader output(section(doc, "output"), "output");
  output.get("dir", c.out_dir);
  return c;
}

json to_json(const RunConfig& c) {
  const auto& sc = c.scenario;
  const auto& d = c.diagnostics;
  json j;
  j["scenario"] = {{"name", sc.name},
                   {"kind", to_string(sc.kind)},
                   {"u0", sc.u0},
                   {"eta0", sc.eta0 ? json(*sc.eta0) : json(nullptr)},
                   {"m0", sc.m0},
                   {"amplitude", sc.amplitude},
                   {"width", sc.width},
                   {"entropy_amplitude", sc.entropy_amplitude},
                   {"entropy_width", sc.entropy_width}};
  j["gas"] = {{"gamma", sc.gas.gamma}, {"K", sc.gas.K}, {"c_v", sc.gas.c_v}};
  j["grid"] = {{"x_min", sc.grid.x_min},
               {"x_max", sc.grid.x_max},
               {"n", sc.grid.n},
               {"boundary", to_string(sc.grid.boundary)}};
  j["numerics"] = {{"stencil_order", c.numerics.stencil_order},
                   {"cfl", c.numerics.cfl},
                   {"hyperdissipation", c.numerics.hyperdissipation}};
  j["time"] = {{"horizon", sc.horizon}, {"snapshot_interval", sc.snapshot_interval}};
  j["diagnostics"] = {{"fit_window", {d.fit_t_a, d.fit_t_b}},
                      {"margin", d.margin},
                      {"M_override", d.M_override ? json(*d.M_override) : json(nullptr)},
                      {"smoothness_threshold", d.smoothness_threshold},
                      {"vacuum_fraction", d.vacuum_fraction},
                      {"field_stride", d.field_stride},
                      {"trace_seeds", d.trace_seeds},
                      {"trace_start", d.trace_start},
                      {"oracle_horizon", d.oracle_horizon},
                      {"oracle_threshold", d.oracle_threshold},
                      {"oracle_improvement", d.oracle_improvement},
                      {"path_tolerance", d.path_tolerance}};
  j["output"] = {{"dir", c.out_dir}};
  return j;
}

void validate(const RunConfig& c) {
  const auto& sc = c.scenario;
  require(sc.gas.gamma > 1.0 && std::isfinite(sc.gas.gamma), "gas.gamma", "must exceed 1");
  require(sc.gas.K > 0.0, "gas.K", "must be positive");
  require(sc.gas.c_v > 0.0, "gas.c_v", "must be positive");
  require(sc.grid.n >= 16, "grid.n", "must be at least 16");
  require(sc.grid.x_max > sc.grid.x_min, "grid.x_max", "must exceed grid.x_min");
  require(c.numerics.stencil_order == 2 || c.numerics.stencil_order == 4, "numerics.stencil_order",
          "must be 2 or 4");
  require(c.numerics.cfl > 0.0 && c.numerics.cfl <= 2.0, "numerics.cfl", "must lie in (0, 2]");
  require(c.numerics.hyperdissipation >= 0.0, "numerics.hyperdissipation", "must be non-negative");
  require(sc.horizon >= 0.0, "time.horizon", "must be non-negative");
  require(sc.snapshot_interval > 0.0, "time.snapshot_interval", "must be positive");
  require(!sc.eta0 || *sc.eta0 > 0.0, "scenario.eta0", "must be positive");
  require(sc.m0 > 0.0, "scenario.m0", "must be positive");
  require(sc.width > 0.0, "scenario.width", "must be positive");
  require(sc.entropy_width > 0.0, "scenario.entropy_width", "must be positive");
  if (sc.kind == ScenarioKind::rarefaction || sc.kind == ScenarioKind::compressive) {
    require(sc.amplitude > 0.0, "scenario.amplitude", "must be positive");
  }
  require(sc.amplitude >= 0.0 || sc.kind == ScenarioKind::periodic_wave, "scenario.amplitude",
          "must be non-negative");
  const auto& d = c.diagnostics;
  require(d.fit_t_a >= 1.0 && d.fit_t_b > d.fit_t_a, "diagnostics.fit_window", "must satisfy 1 <= t_a < t_b");
  require(d.margin > 0.0, "diagnostics.margin", "must be positive");
  require(!d.M_override || *d.M_override > 0.0, "diagnostics.M_override", "must be positive");
  require(d.smoothness_threshold > 0.0, "diagnostics.smoothness_threshold", "must be positive");
  require(d.vacuum_fraction >= 0.0 && d.vacuum_fraction < 1.0, "diagnostics.vacuum_fraction",
          "must lie in [0, 1)");
  require(d.field_stride >= 0, "diagnostics.field_stride", "must be non-negative");
  require(d.oracle_horizon > 0.0, "diagnostics.oracle_horizon", "must be positive");
  require(d.path_tolerance > 0.0, "diagnostics.path_tolerance", "must be positive");
  require(!c.out_dir.empty(), "output.dir", "must not be empty");
}

namespace {

// "p/q" with numeric p and q, as in gamma=5/3
std::optional<double> parse_ratio(const std::string& raw) {
  const auto slash = raw.find('/');
  if (slash == std::string::npos) return std::nullopt;
  try {
    std::size_t used_p = 0, used_q = 0;
    const std::string p = raw.substr(0, slash), q = raw.substr(slash + 1);
    const double num = std::stod(p, &used_p);
    const double den = std::stod(q, &used_q);
    if (used_p != p.size() || used_q != q.size() || den == 0.0) return std::nullopt;
    return num / den;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like KEY=VALUE");
  std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  if (key.find('.') == std::string::npos) {
    std::string found;
    for (const auto& [sec, keys] : schema()) {
      if (keys.count(key)) {
        if (!found.empty()) throw ConfigError(key, "ambiguous override key; qualify it with a section");
        found = sec + "." + key;
      }
    }
    if (found.empty()) throw ConfigError(key, "unknown key");
    key = found;
  }
  const auto dot = key.find('.');
  const std::string sec = key.substr(0, dot);
  const std::string name = key.substr(dot + 1);
  auto it = schema().find(sec);
  if (it == schema().end() || !it->second.count(name)) throw ConfigError(key, "unknown key");
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    if (auto q = parse_ratio(raw)) {
      value = *q;
    } else {
      value = raw;
    }
  }
  doc[sec][name] = value;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = read_json_file(path);
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig c = parse_config(doc);
  validate(c);
  return c;
}

}  // namespace euler1d
