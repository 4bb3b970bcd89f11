#pragma once

#include <complex>
#include <vector>

#include "isingbath/bath_spectrum.hpp"

namespace isingbath {

using Complex = std::complex<double>;

/// Uniform time grid on [0, t_max] in units of 1/J.
class TimeGrid {
 public:
  /// n_points >= 2, t_max > 0. The degenerate grid {0} is accepted as
  /// (t_max = 0, n_points = 1).
  TimeGrid(double t_max, int n_points);

  static TimeGrid single_origin() { return TimeGrid(0.0, 1); }

  double t_max() const { return t_max_; }
  int n_points() const { return static_cast<int>(samples_.size()); }
  double spacing() const { return n_points() > 1 ? t_max_ / (n_points() - 1) : 0.0; }
  const std::vector<double>& samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_max_;
  std::vector<double> samples_;
};

/// Which field the thermal weights and Bogoliubov angles inside the pulsed
/// factor are taken at.
enum class ThermalField { original, h_bar };

/// Bang-bang control in the instant-flip limit. The cycle period covers two
/// pulses.
struct PulseConfig {
  bool enabled = false;
  double period = 0.0;
  ThermalField thermal_field = ThermalField::original;

  static PulseConfig none() { return {}; }
  static PulseConfig with_period(double period) { return {true, period, ThermalField::original}; }

  friend bool operator==(const PulseConfig&, const PulseConfig&) = default;
};

struct DecoherenceTrajectory {
  TimeGrid grid;
  std::vector<Complex> values;
  std::vector<double> magnitude;
  std::vector<double> echo;
};

/// Free-evolution decoherence factor with all per-mode constants cached, so
/// that repeated evaluation over a time grid costs one pass over the modes.
class FreeDecoherence {
 public:
  explicit FreeDecoherence(const BathParams& params);

  /// Throws ComputationError on a non-finite result.
  Complex operator()(double t) const;

  std::size_t n_modes() const { return modes_.size(); }

 private:
  struct Mode {
    double energy;        // 2 J Lambda_k(h)
    double energy_tilde;  // 2 J Lambda_k(h~)
    double cos_2alpha;
    double polarization;  // tanh(2 J beta Lambda_k(h))
  };
  std::vector<Mode> modes_;
  double f_;
};

/// Unit axis of the pulsed per-mode rotation.
struct PulseAxis {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;
  double lambda_p = 0.0;
};

PulseAxis pulse_axis(double k, const BathParams& params, const PulseConfig& pulses);

/// Effective decoherence factor under bang-bang control, cached per mode.
class PulsedDecoherence {
 public:
  PulsedDecoherence(const BathParams& params, const PulseConfig& pulses);

  Complex operator()(double t) const;

 private:
  struct Mode {
    double energy;      // 2 J Lambda_p
    double loss;        // 2 n_x^2
    double twist;       // 2 n_x (n_y cos theta - n_z sin theta) tanh(2 J beta Lambda)
  };
  std::vector<Mode> modes_;
};

Complex decoherence_factor(const BathParams& params, double t);

Complex effective_decoherence_factor(const BathParams& params, const PulseConfig& pulses,
                                     double t);

/// OpenMP over time samples; bit-identical to trajectory_serial.
DecoherenceTrajectory trajectory(const BathParams& params, const TimeGrid& grid,
                                 const PulseConfig& pulses = PulseConfig::none());

/// Serial reference implementation of trajectory().
DecoherenceTrajectory trajectory_serial(const BathParams& params, const TimeGrid& grid,
                                        const PulseConfig& pulses = PulseConfig::none());

std::vector<double> loschmidt_echo(const DecoherenceTrajectory& traj);

}  // namespace isingbath
