#include <cmath>
#include <limits>

#include "isingbath/errors.hpp"
#include "isingbath/parallel.hpp"
#include "isingbath/sweep.hpp"

namespace isingbath {

bool ResultTable::has_errors() const {
  for (const auto& r : rows)
    if (!r.error.empty()) return true;
  return false;
}

std::vector<double> evaluate_point(const PointConfig& point, Observable observable,
                                   double threshold) {
  const BathParams params = point.bath.to_params();
  const TimeGrid grid = point.grid.resolve(point.bath);
  const auto traj = trajectory_serial(params, grid, point.pulses);
  switch (observable) {
    case Observable::echo:
      return traj.echo;
    case Observable::quantumness:
      if (!point.state) throw ConfigError("quantumness needs an initial state");
      return quantumness_series(*point.state, traj.magnitude);
    case Observable::n_q:
      return {n_q(traj.echo, threshold)};
    case Observable::i_q:
      return {i_q(n_q(traj.echo, threshold))};
    case Observable::normalized_n: {
      const auto state = point.state.value_or(BellDiagonalState::maximally_entangled());
      return {normalized_n(quantumness_series(state, traj.magnitude), threshold)};
    }
  }
  return {};
}

namespace {

struct Slot {
  std::vector<double> values;
  std::string error;
};

void evaluate_slot(const SweepSpec& spec, const std::vector<SeriesSpec>& series, std::size_t task,
                   std::vector<Slot>& slots) {
  const std::size_t a = task / series.size();
  const std::size_t s = task % series.size();
  try {
    slots[task].values = evaluate_point(spec.point(series[s], spec.values[a]), spec.observable,
                                        spec.threshold);
  } catch (const std::exception& e) {
    slots[task].error = e.what();
  }
}

ResultTable assemble(const SweepSpec& spec, const std::vector<SeriesSpec>& series,
                     const std::vector<Slot>& slots) {
  ResultTable table;
  table.axis = spec.axis;
  table.observable = spec.observable;
  for (const auto& s : series) table.series_labels.push_back(s.label);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t a = 0; a < spec.values.size(); ++a) {
    std::string error;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const auto& slot = slots[a * series.size() + s];
      if (slot.error.empty()) continue;
      if (!error.empty()) error += "; ";
      error += series[s].label.empty() ? slot.error : series[s].label + ": " + slot.error;
    }
    if (is_series(spec.observable)) {
      const TimeGrid grid = spec.point(series.front(), spec.values[a]).grid.resolve(
          spec.point(series.front(), spec.values[a]).bath);
      for (std::size_t i = 0; i < grid.samples().size(); ++i) {
        ResultRow row{spec.values[a], grid[i], {}, error};
        for (std::size_t s = 0; s < series.size(); ++s) {
          const auto& v = slots[a * series.size() + s].values;
          row.values.push_back(i < v.size() ? v[i] : nan);
        }
        table.rows.push_back(std::move(row));
      }
    } else {
      ResultRow row{spec.values[a], std::nullopt, {}, error};
      for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& v = slots[a * series.size() + s].values;
        row.values.push_back(v.empty() ? nan : v.front());
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace

ResultTable run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto series = spec.effective_series();
  const auto n_tasks = static_cast<long>(spec.values.size() * series.size());
  std::vector<Slot> slots(static_cast<std::size_t>(n_tasks));
  ISINGBATH_OMP_PRAGMA("omp parallel for schedule(dynamic, 1)")
  for (long task = 0; task < n_tasks; ++task)
    evaluate_slot(spec, series, static_cast<std::size_t>(task), slots);
  return assemble(spec, series, slots);
}

ResultTable run_sweep_serial(const SweepSpec& spec) {
  validate(spec);
  const auto series = spec.effective_series();
  std::vector<Slot> slots(spec.values.size() * series.size());
  for (std::size_t task = 0; task < slots.size(); ++task) evaluate_slot(spec, series, task, slots);
  return assemble(spec, series, slots);
}

}  // namespace isingbath
