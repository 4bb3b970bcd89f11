#pragma once

#include <span>
#include <vector>

namespace isingbath {

inline constexpr double kDefaultExtremaThreshold = 1e-6;

enum class ExtremumKind { min, max };

struct Extremum {
  std::size_t index = 0;
  double time = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::min;
};

struct ExtremaList {
  double initial = 0.0;
  std::vector<Extremum> events;
};

/// Hysteresis extremum detection. A turning point is kept only once the
/// subsequent move exceeds `threshold`. Plateaus collapse to their midpoint.
/// Endpoints are never extrema except that the last sample closes a rise that
/// is still open when the series ends. Fewer than 3 samples yield no events.
ExtremaList find_extrema(std::span<const double> series, std::span<const double> times,
                         double threshold = kDefaultExtremaThreshold);

/// Index-timed overload (time = sample index).
ExtremaList find_extrema(std::span<const double> series,
                         double threshold = kDefaultExtremaThreshold);

/// Sum of revivals of sqrt(L) over successive (min, max) pairs.
double n_q(std::span<const double> echo, double threshold = kDefaultExtremaThreshold);

/// N_Q / (N_Q + 1); 1 for infinite input. Throws ConfigError for negative input.
double i_q(double nq);

/// Largest recovered fraction of previously lost quantumness, in [0, 1].
/// Throws ConfigError if q[0] is zero.
double normalized_n(std::span<const double> q, double threshold = kDefaultExtremaThreshold);

}  // namespace isingbath
