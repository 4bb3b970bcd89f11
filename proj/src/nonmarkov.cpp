#include "isingbath/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "isingbath/errors.hpp"

namespace isingbath {

namespace {

struct Run {
  std::size_t first;
  std::size_t last;
  double value;
  std::size_t mid() const { return first + (last - first) / 2; }
};

std::vector<Run> collapse_plateaus(std::span<const double> s) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!runs.empty() && s[i] == runs.back().value)
      runs.back().last = i;
    else
      runs.push_back({i, i, s[i]});
  }
  return runs;
}

enum class Direction { unknown, up, down };

}  // namespace

ExtremaList find_extrema(std::span<const double> series, std::span<const double> times,
                         double threshold) {
  if (times.size() != series.size()) throw ConfigError("series and time axis differ in length");
  if (threshold < 0.0 || std::isnan(threshold)) throw ConfigError("threshold must be >= 0");
  ExtremaList out;
  if (series.empty()) return out;
  out.initial = series.front();
  if (series.size() < 3) return out;

  const auto runs = collapse_plateaus(series);
  auto emit = [&](const Run& r, ExtremumKind kind, std::size_t index) {
    out.events.push_back({index, times[index], r.value, kind});
  };

  Direction dir = Direction::unknown;
  std::size_t lo = 0, hi = 0, cand = 0;  // indices into runs
  for (std::size_t r = 1; r < runs.size(); ++r) {
    const double v = runs[r].value;
    switch (dir) {
      case Direction::unknown:
        if (v < runs[lo].value) lo = r;
        if (v > runs[hi].value) hi = r;
        if (v - runs[lo].value > threshold) {
          if (lo != 0) emit(runs[lo], ExtremumKind::min, runs[lo].mid());
          dir = Direction::up;
          cand = r;
        } else if (runs[hi].value - v > threshold) {
          if (hi != 0) emit(runs[hi], ExtremumKind::max, runs[hi].mid());
          dir = Direction::down;
          cand = r;
        }
        break;
      case Direction::down:
        if (v < runs[cand].value) {
          cand = r;
        } else if (v - runs[cand].value > threshold) {
          emit(runs[cand], ExtremumKind::min, runs[cand].mid());
          dir = Direction::up;
          cand = r;
        }
        break;
      case Direction::up:
        if (v > runs[cand].value) {
          cand = r;
        } else if (runs[cand].value - v > threshold) {
          emit(runs[cand], ExtremumKind::max, runs[cand].mid());
          dir = Direction::down;
          cand = r;
        }
        break;
    }
  }
  // The horizon cuts an open rise: its top still counts as a revival.
  if (dir == Direction::up) {
    const Run& top = runs[cand];
    const std::size_t index = cand + 1 == runs.size() ? series.size() - 1 : top.mid();
    emit(top, ExtremumKind::max, index);
  }
  return out;
}

ExtremaList find_extrema(std::span<const double> series, double threshold) {
  std::vector<double> idx(series.size());
  std::iota(idx.begin(), idx.end(), 0.0);
  return find_extrema(series, idx, threshold);
}

double n_q(std::span<const double> echo, double threshold) {
  std::vector<double> root(echo.size());
  for (std::size_t i = 0; i < echo.size(); ++i) root[i] = std::sqrt(std::max(echo[i], 0.0));
  const auto ext = find_extrema(root, threshold);
  double total = 0.0;
  const Extremum* last_min = nullptr;
  for (const auto& e : ext.events) {
    if (e.kind == ExtremumKind::min) {
      last_min = &e;
    } else if (last_min != nullptr) {
      total += e.value - last_min->value;
      last_min = nullptr;
    }
  }
  return total;
}

double i_q(double nq) {
  if (!(nq >= 0.0)) throw ConfigError("N_Q must be non-negative");
  if (std::isinf(nq)) return 1.0;
  return nq / (nq + 1.0);
}

double normalized_n(std::span<const double> q, double threshold) {
  if (q.empty() || q.front() == 0.0)
    throw ConfigError("normalized non-Markovianity needs Q(0) != 0");
  const auto ext = find_extrema(q, threshold);
  const double q0 = ext.initial;
  double best = 0.0;
  // Every minimum against every later maximum, not only the adjacent one.
  double later_max = -std::numeric_limits<double>::infinity();
  for (auto it = ext.events.rbegin(); it != ext.events.rend(); ++it) {
    if (it->kind == ExtremumKind::max) {
      later_max = std::max(later_max, it->value);
      continue;
    }
    const double lost = q0 - it->value;
    if (lost <= 1e-12 || !std::isfinite(later_max)) continue;
    best = std::max(best, (later_max - it->value) / lost);
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace isingbath
