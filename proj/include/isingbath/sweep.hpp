#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isingbath/bath_spectrum.hpp"
#include "isingbath/decoherence.hpp"
#include "isingbath/nonmarkov.hpp"
#include "isingbath/quantumness.hpp"

namespace isingbath {

enum class Axis { h, temperature, n_spins, pulse_period };
enum class Observable { echo, quantumness, n_q, i_q, normalized_n };

std::string_view to_string(Axis axis);
std::string_view to_string(Observable observable);
bool is_series(Observable observable);

/// Bath parameters as configured: temperature rather than beta.
struct BathSettings {
  int n_spins = 0;
  double h = 0.0;
  double j = 1.0;
  double epsilon = 0.0;
  double f = 0.0;
  double temperature = 0.0;
  double kappa_b = 1.0;

  /// beta = 1 / (kappa_b T); throws ConfigError for T <= 0.
  BathParams to_params() const;

  friend bool operator==(const BathSettings&, const BathSettings&) = default;
};

/// Unset fields resolve per point: t_max = 2N/J, n_points = 20 t_max.
struct GridSettings {
  std::optional<double> t_max;
  std::optional<int> n_points;

  TimeGrid resolve(const BathSettings& bath) const;

  friend bool operator==(const GridSettings&, const GridSettings&) = default;
};

/// Everything needed to compute one trajectory.
struct PointConfig {
  BathSettings bath;
  std::optional<BellDiagonalState> state;
  bool require_positive = true;  // reject states with negative eigenvalues
  GridSettings grid;
  PulseConfig pulses;

  friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

/// A named variant of the base configuration, written as one value column.
struct SeriesSpec {
  std::string label;
  std::vector<std::string> overridden_keys;  // qualified, e.g. "bath.temperature"
  PointConfig config;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct SweepSpec {
  PointConfig base;
  Axis axis = Axis::h;
  std::vector<double> values;
  Observable observable = Observable::echo;
  double threshold = kDefaultExtremaThreshold;
  std::vector<SeriesSpec> series;

  /// The base itself when no [series.*] sections are given.
  std::vector<SeriesSpec> effective_series() const;

  /// Configuration of one sweep point; axis value applied on top of series.
  PointConfig point(const SeriesSpec& series, double axis_value) const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Parses the sectioned key-value format. Throws ConfigError with the line
/// number or offending key.
SweepSpec parse_config(std::string_view text);

/// Resolved spec as a config document, parseable by parse_config.
std::string to_config_text(const SweepSpec& spec);

/// Throws ConfigError on inconsistent specs.
void validate(const SweepSpec& spec);

std::vector<std::string> preset_names();
std::string_view preset_text(std::string_view name);
SweepSpec preset(std::string_view name);

struct ResultRow {
  double axis_value = 0.0;
  std::optional<double> t;     // empty for scalar observables
  std::vector<double> values;  // one per series, NaN on error
  std::string error;
};

struct ResultTable {
  Axis axis = Axis::h;
  Observable observable = Observable::echo;
  std::vector<std::string> series_labels;
  std::vector<ResultRow> rows;

  bool has_errors() const;
};

/// Values for a single sweep point: a time series or a one-element vector.
std::vector<double> evaluate_point(const PointConfig& point, Observable observable,
                                   double threshold);

/// OpenMP over sweep points; each point is a full serial trajectory.
ResultTable run_sweep(const SweepSpec& spec);

/// Serial reference implementation of run_sweep().
ResultTable run_sweep_serial(const SweepSpec& spec);

enum class OutputFormat { csv, json };

std::string format_double(double value);
std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);

/// Writes the table and a `<path>.meta` sidecar holding the resolved spec.
/// Throws std::runtime_error naming the path when it cannot be written.
void emit(const ResultTable& table, const SweepSpec& spec, OutputFormat format,
          const std::string& path);

}  // namespace isingbath
