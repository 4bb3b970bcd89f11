#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "isingbath/errors.hpp"
#include "isingbath/sweep.hpp"

namespace isingbath {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string value_column(const std::string& label) {
  return label.empty() ? "value" : "value:" + label;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
  std::string out = "axis,t,observable";
  if (table.series_labels.empty()) out += ",value";
  for (const auto& label : table.series_labels) out += "," + csv_field(value_column(label));
  out += ",error\n";
  const std::string observable(to_string(table.observable));
  for (const auto& row : table.rows) {
    out += format_double(row.axis_value);
    out += ',';
    if (row.t) out += format_double(*row.t);
    out += ',' + observable;
    for (double v : row.values) out += ',' + format_double(v);
    out += ',' + csv_field(row.error) + '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  using nlohmann::json;
  json doc;
  doc["axis"] = std::string(to_string(table.axis));
  doc["observable"] = std::string(to_string(table.observable));
  doc["series"] = table.series_labels;
  json points = json::array();
  for (std::size_t i = 0; i < table.rows.size();) {
    const double a = table.rows[i].axis_value;
    json point;
    point["axis_value"] = a;
    json t = json::array();
    std::vector<json> columns(table.series_labels.size(), json::array());
    std::string error;
    // Rows of one axis value are contiguous.
    for (; i < table.rows.size() && table.rows[i].axis_value == a; ++i) {
      const auto& row = table.rows[i];
      if (row.t) t.push_back(*row.t);
      for (std::size_t s = 0; s < columns.size(); ++s) columns[s].push_back(row.values[s]);
      error = row.error;
    }
    if (!t.empty()) point["t"] = std::move(t);
    json values = json::object();
    for (std::size_t s = 0; s < columns.size(); ++s) {
      const std::string key = table.series_labels[s].empty() ? "value" : table.series_labels[s];
      values[key] = columns[s].size() == 1 && !point.contains("t") ? columns[s][0] : columns[s];
    }
    point["values"] = std::move(values);
    point["error"] = error;
    points.push_back(std::move(point));
  }
  doc["points"] = std::move(points);
  return doc.dump(1) + "\n";
}

void emit(const ResultTable& table, const SweepSpec& spec, OutputFormat format,
          const std::string& path) {
  auto write = [](const std::string& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open output file " + file);
    out << content;
    out.close();
    if (!out) throw OutputError("failed writing output file " + file);
  };
  write(path, format == OutputFormat::csv ? to_csv(table) : to_json(table));
  write(path + ".meta", to_config_text(spec));
}

}  // namespace isingbath
