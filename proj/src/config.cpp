#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "isingbath/errors.hpp"
#include "isingbath/sweep.hpp"

namespace isingbath {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::h: return "h";
    case Axis::temperature: return "T";
    case Axis::n_spins: return "N";
    case Axis::pulse_period: return "pulse_period";
  }
  return "?";
}

std::string_view to_string(Observable observable) {
  switch (observable) {
    case Observable::echo: return "echo";
    case Observable::quantumness: return "quantumness";
    case Observable::n_q: return "n_q";
    case Observable::i_q: return "i_q";
    case Observable::normalized_n: return "normalized_n";
  }
  return "?";
}

bool is_series(Observable observable) {
  return observable == Observable::echo || observable == Observable::quantumness;
}

BathParams BathSettings::to_params() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw ConfigError("temperature must be positive (use 1e-3 for near-zero temperature)");
  if (!(kappa_b > 0.0)) throw ConfigError("kappa_b must be positive");
  BathParams p{n_spins, h, j, epsilon, f, 1.0 / (kappa_b * temperature)};
  validate(p);
  return p;
}

TimeGrid GridSettings::resolve(const BathSettings& bath) const {
  const double t_max_value = t_max.value_or(2.0 * bath.n_spins / bath.j);
  const int n = n_points.value_or(
      std::max(2, static_cast<int>(std::lround(20.0 * bath.j * t_max_value))));
  return TimeGrid(t_max_value, n);
}

std::vector<SeriesSpec> SweepSpec::effective_series() const {
  if (!series.empty()) return series;
  return {SeriesSpec{"", {}, base}};
}

PointConfig SweepSpec::point(const SeriesSpec& s, double axis_value) const {
  PointConfig p = s.config;
  switch (axis) {
    case Axis::h: p.bath.h = axis_value; break;
    case Axis::temperature: p.bath.temperature = axis_value; break;
    case Axis::n_spins: p.bath.n_spins = static_cast<int>(std::lround(axis_value)); break;
    case Axis::pulse_period: p.pulses.period = axis_value; break;
  }
  return p;
}

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

bool known_section(const std::string& s) {
  for (const char* n : {"bath", "state", "grid", "pulses", "sweep", "meta"})
    if (s == n) return true;
  return s.rfind("series.", 0) == 0;
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) fail_at(line_no, "empty section name");
      if (!known_section(section)) fail_at(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(line_no, "expected 'key = value'");
    if (section.empty()) fail_at(line_no, "key outside of any section");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail_at(line_no, "missing key");
    if (value.empty()) fail_at(line_no, "missing value for '" + key + "'");
    entries.push_back({section, key, value, line_no});
  }
  return entries;
}

double parse_double(const Entry& e, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    fail_at(e.line, "'" + e.key + "' expects a finite number, got '" + std::string(text) + "'");
  return v;
}

double parse_double(const Entry& e) { return parse_double(e, e.value); }

int parse_int(const Entry& e) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size())
    fail_at(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
  return v;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true" || e.value == "on" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "off" || e.value == "no" || e.value == "0") return false;
  fail_at(e.line, "'" + e.key + "' expects true or false, got '" + e.value + "'");
}

std::vector<double> parse_list(const Entry& e) {
  std::vector<double> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    if (item.empty()) fail_at(e.line, "empty item in list '" + e.key + "'");
    out.push_back(parse_double(e, item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> linear_range(const Entry& e) {
  const auto parts = parse_list(e);
  if (parts.size() != 3) fail_at(e.line, "'range' expects 'start, stop, count'");
  const double count_d = parts[2];
  if (count_d < 1 || count_d != std::floor(count_d)) fail_at(e.line, "range count must be a positive integer");
  const auto count = static_cast<std::size_t>(count_d);
  if (count == 1) return {parts[0]};
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) / static_cast<double>(count - 1);
  v.back() = parts[1];
  return v;
}

Axis parse_axis(const Entry& e) {
  if (e.value == "h") return Axis::h;
  if (e.value == "T" || e.value == "temperature") return Axis::temperature;
  if (e.value == "N" || e.value == "n_spins") return Axis::n_spins;
  if (e.value == "pulse_period" || e.value == "period") return Axis::pulse_period;
  fail_at(e.line, "unknown axis '" + e.value + "' (expected h, T, N or pulse_period)");
}

Observable parse_observable(const Entry& e) {
  for (auto o : {Observable::echo, Observable::quantumness, Observable::n_q, Observable::i_q,
                 Observable::normalized_n})
    if (e.value == to_string(o)) return o;
  fail_at(e.line, "unknown observable '" + e.value +
                      "' (expected echo, quantumness, n_q, i_q or normalized_n)");
}

// Tracks which keys appeared, to report missing required ones and duplicates.
using KeySet = std::set<std::string>;

void apply_point_key(PointConfig& p, const std::string& section, const Entry& e,
                     std::array<std::optional<double>, 3>& state_parts) {
  const auto& k = e.key;
  if (section == "bath") {
    if (k == "n_spins") p.bath.n_spins = parse_int(e);
    else if (k == "h") p.bath.h = parse_double(e);
    else if (k == "j") p.bath.j = parse_double(e);
    else if (k == "epsilon") p.bath.epsilon = parse_double(e);
    else if (k == "f") p.bath.f = parse_double(e);
    else if (k == "temperature") p.bath.temperature = parse_double(e);
    else if (k == "kappa_b") p.bath.kappa_b = parse_double(e);
    else fail_at(e.line, "unknown key '" + k + "' in [bath]");
  } else if (section == "state") {
    if (k == "c1") state_parts[0] = parse_double(e);
    else if (k == "c2") state_parts[1] = parse_double(e);
    else if (k == "c3") state_parts[2] = parse_double(e);
    else if (k == "require_positive") p.require_positive = parse_bool(e);
    else fail_at(e.line, "unknown key '" + k + "' in [state]");
  } else if (section == "grid") {
    if (k == "t_max") p.grid.t_max = e.value == "auto" ? std::nullopt : std::optional(parse_double(e));
    else if (k == "n_points") p.grid.n_points = e.value == "auto" ? std::nullopt : std::optional(parse_int(e));
    else fail_at(e.line, "unknown key '" + k + "' in [grid]");
  } else if (section == "pulses") {
    if (k == "enabled") p.pulses.enabled = parse_bool(e);
    else if (k == "period") p.pulses.period = parse_double(e);
    else if (k == "thermal_field") {
      if (e.value == "original" || e.value == "h") p.pulses.thermal_field = ThermalField::original;
      else if (e.value == "h_bar") p.pulses.thermal_field = ThermalField::h_bar;
      else fail_at(e.line, "thermal_field expects 'original' or 'h_bar'");
    } else fail_at(e.line, "unknown key '" + k + "' in [pulses]");
  } else {
    fail_at(e.line, "unknown section [" + section + "]");
  }
}

void apply_state(PointConfig& p, const std::array<std::optional<double>, 3>& parts,
                 const std::string& where, int line) {
  const int given = static_cast<int>(std::count_if(parts.begin(), parts.end(),
                                                   [](const auto& x) { return x.has_value(); }));
  if (given == 0) return;
  if (!p.state && given != 3) fail_at(line, where + " needs all of c1, c2, c3");
  BellDiagonalState s = p.state.value_or(BellDiagonalState{});
  if (parts[0]) s.c1 = *parts[0];
  if (parts[1]) s.c2 = *parts[1];
  if (parts[2]) s.c3 = *parts[2];
  p.state = s;
}

}  // namespace

SweepSpec parse_config(std::string_view text) {
  const auto entries = tokenize(text);
  SweepSpec spec;
  KeySet seen;
  std::array<std::optional<double>, 3> state_parts;
  int state_line = 0;
  bool axis_set = false, values_set = false;

  std::vector<std::string> series_order;
  std::map<std::string, std::vector<Entry>> series_entries;

  for (const auto& e : entries) {
    const std::string qualified = e.section + "." + e.key;
    if (!seen.insert(qualified).second) fail_at(e.line, "duplicate key '" + qualified + "'");

    if (e.section.rfind("series.", 0) == 0) {
      const std::string label = e.section.substr(7);
      if (label.empty()) fail_at(e.line, "series section needs a label");
      if (!series_entries.count(label)) series_order.push_back(label);
      series_entries[label].push_back(e);
    } else if (e.section == "sweep") {
      if (e.key == "axis") { spec.axis = parse_axis(e); axis_set = true; }
      else if (e.key == "values") {
        if (values_set) fail_at(e.line, "give either 'values' or 'range', not both");
        spec.values = parse_list(e);
        values_set = true;
      } else if (e.key == "range") {
        if (values_set) fail_at(e.line, "give either 'values' or 'range', not both");
        spec.values = linear_range(e);
        values_set = true;
      } else if (e.key == "observable") { spec.observable = parse_observable(e); }
      else if (e.key == "threshold") spec.threshold = parse_double(e);
      else fail_at(e.line, "unknown key '" + e.key + "' in [sweep]");
    } else if (e.section == "meta") {
      if (e.key != "artifact_version" && e.key != "preset")
        fail_at(e.line, "unknown key '" + e.key + "' in [meta]");
    } else {
      if (e.section == "state") state_line = e.line;
      apply_point_key(spec.base, e.section, e, state_parts);
    }
  }
  apply_state(spec.base, state_parts, "[state]", state_line);

  // Keys that are swept need no base value.
  std::vector<std::string> missing;
  auto require = [&](const std::string& key, bool swept = false) {
    if (!swept && !seen.count(key)) missing.push_back(key);
  };
  require("bath.n_spins", axis_set && spec.axis == Axis::n_spins);
  require("bath.h", axis_set && spec.axis == Axis::h);
  require("bath.epsilon");
  require("bath.temperature", axis_set && spec.axis == Axis::temperature);
  require("sweep.axis");
  if (!values_set) missing.push_back("sweep.values (or sweep.range)");
  require("sweep.observable");
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }

  for (const auto& label : series_order) {
    SeriesSpec s{label, {}, spec.base};
    std::array<std::optional<double>, 3> parts;
    int line = 0;
    for (const auto& e : series_entries[label]) {
      const auto dot = e.key.find('.');
      if (dot == std::string::npos)
        fail_at(e.line, "series keys are qualified by section, e.g. 'bath.temperature'");
      Entry inner = e;
      inner.key = e.key.substr(dot + 1);
      const std::string section = e.key.substr(0, dot);
      if (section != "bath" && section != "state" && section != "grid" && section != "pulses")
        fail_at(e.line, "series cannot override '" + e.key + "'");
      apply_point_key(s.config, section, inner, parts);
      s.overridden_keys.push_back(e.key);
      line = e.line;
    }
    apply_state(s.config, parts, "[series." + label + "]", line);
    spec.series.push_back(std::move(s));
  }

  validate(spec);
  return spec;
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep.values is empty");
  if (!(spec.threshold >= 0.0)) throw ConfigError("sweep.threshold must be >= 0");
  for (double v : spec.values) {
    switch (spec.axis) {
      case Axis::n_spins:
        if (v != std::floor(v) || v < 2 || static_cast<long>(v) % 2 != 0)
          throw ConfigError("sweep.values: N must be a positive even integer, got " +
                            format_double(v));
        break;
      case Axis::temperature:
        if (!(v > 0.0)) throw ConfigError("sweep.values: T must be positive (T = 0 is not allowed)");
        break;
      case Axis::pulse_period:
        if (!(v > 0.0)) throw ConfigError("sweep.values: pulse period must be positive");
        break;
      case Axis::h:
        break;
    }
  }
  const auto all_series = spec.effective_series();
  if (spec.axis == Axis::pulse_period &&
      std::none_of(all_series.begin(), all_series.end(),
                   [](const SeriesSpec& s) { return s.config.pulses.enabled; }))
    throw ConfigError("axis pulse_period needs pulses.enabled in at least one series");

  for (double v : spec.values) {
    std::optional<int> n_points;
    for (const auto& s : all_series) {
      const auto p = spec.point(s, v);
      const std::string where = s.label.empty() ? std::string("base") : "series '" + s.label + "'";
      try {
        (void)p.bath.to_params();
        if (p.state) {
          if (p.require_positive) validate(*p.state);
          else validate_bounds(*p.state);
        }
        if (p.pulses.enabled && !(p.pulses.period > 0.0))
          throw ConfigError("pulses.period must be positive when pulses are enabled");
        if (spec.observable == Observable::quantumness && !p.state)
          throw ConfigError("observable quantumness needs a [state] (c1, c2, c3)");
        const int n = p.grid.resolve(p.bath).n_points();
        if (is_series(spec.observable)) {
          if (n_points && *n_points != n)
            throw ConfigError("all series must share one time grid for series observables");
          n_points = n;
        }
      } catch (const ConfigError& err) {
        throw ConfigError(where + " at " + std::string(to_string(spec.axis)) + " = " +
                          format_double(v) + ": " + err.what());
      }
    }
  }
}

namespace {

std::string fmt_optional(const std::optional<double>& v) { return v ? format_double(*v) : "auto"; }
std::string fmt_optional(const std::optional<int>& v) { return v ? std::to_string(*v) : "auto"; }

std::string point_value(const PointConfig& p, const std::string& qualified) {
  if (qualified == "bath.n_spins") return std::to_string(p.bath.n_spins);
  if (qualified == "bath.h") return format_double(p.bath.h);
  if (qualified == "bath.j") return format_double(p.bath.j);
  if (qualified == "bath.epsilon") return format_double(p.bath.epsilon);
  if (qualified == "bath.f") return format_double(p.bath.f);
  if (qualified == "bath.temperature") return format_double(p.bath.temperature);
  if (qualified == "bath.kappa_b") return format_double(p.bath.kappa_b);
  if (qualified == "state.c1") return format_double(p.state->c1);
  if (qualified == "state.c2") return format_double(p.state->c2);
  if (qualified == "state.c3") return format_double(p.state->c3);
  if (qualified == "state.require_positive") return p.require_positive ? "true" : "false";
  if (qualified == "grid.t_max") return fmt_optional(p.grid.t_max);
  if (qualified == "grid.n_points") return fmt_optional(p.grid.n_points);
  if (qualified == "pulses.enabled") return p.pulses.enabled ? "true" : "false";
  if (qualified == "pulses.period") return format_double(p.pulses.period);
  if (qualified == "pulses.thermal_field")
    return p.pulses.thermal_field == ThermalField::h_bar ? "h_bar" : "original";
  throw ConfigError("cannot serialize key '" + qualified + "'");
}

}  // namespace

std::string to_config_text(const SweepSpec& spec) {
  std::ostringstream out;
  const auto& p = spec.base;
  out << "[meta]\nartifact_version = " << ISINGBATH_VERSION << "\n\n";
  out << "[bath]\n";
  for (const char* k : {"n_spins", "h", "j", "epsilon", "f", "temperature", "kappa_b"})
    out << k << " = " << point_value(p, std::string("bath.") + k) << "\n";
  if (p.state) {
    out << "\n[state]\n";
    for (const char* k : {"c1", "c2", "c3", "require_positive"})
      out << k << " = " << point_value(p, std::string("state.") + k) << "\n";
  } else if (!p.require_positive) {
    out << "\n[state]\nrequire_positive = false\n";
  }
  out << "\n[grid]\n";
  out << "t_max = " << point_value(p, "grid.t_max") << "\n";
  out << "n_points = " << point_value(p, "grid.n_points") << "\n";
  out << "\n[pulses]\n";
  for (const char* k : {"enabled", "period", "thermal_field"})
    out << k << " = " << point_value(p, std::string("pulses.") + k) << "\n";
  out << "\n[sweep]\n";
  out << "axis = " << to_string(spec.axis) << "\n";
  out << "values = ";
  for (std::size_t i = 0; i < spec.values.size(); ++i)
    out << (i ? ", " : "") << format_double(spec.values[i]);
  out << "\nobservable = " << to_string(spec.observable) << "\n";
  out << "threshold = " << format_double(spec.threshold) << "\n";
  for (const auto& s : spec.series) {
    out << "\n[series." << s.label << "]\n";
    for (const auto& key : s.overridden_keys) out << key << " = " << point_value(s.config, key) << "\n";
  }
  return out.str();
}

}  // namespace isingbath
