#include "isingbath/decoherence.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "isingbath/errors.hpp"
#include "isingbath/parallel.hpp"

namespace isingbath {

namespace {

// Plain (ac - bd, ad + bc); keeps the accumulation order fixed.
inline void multiply_into(double& re, double& im, double a, double b) {
  const double r = re * a - im * b;
  const double i = re * b + im * a;
  re = r;
  im = i;
}

inline Complex checked(double re, double im, double t, const char* what) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw ComputationError(std::string(what) + " is not finite", t);
  return {re, im};
}

}  // namespace

TimeGrid::TimeGrid(double t_max, int n_points) : t_max_(t_max) {
  if (n_points == 1 && t_max == 0.0) {
    samples_ = {0.0};
    return;
  }
  if (n_points < 2) throw ConfigError("time grid needs n_points >= 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw ConfigError("time grid needs a finite t_max > 0");
  samples_.resize(static_cast<std::size_t>(n_points));
  const double dt = t_max / (n_points - 1);
  for (int i = 0; i + 1 < n_points; ++i) samples_[static_cast<std::size_t>(i)] = i * dt;
  samples_.back() = t_max;
}

FreeDecoherence::FreeDecoherence(const BathParams& params) : f_(params.f) {
  const auto table = mode_table(params);
  modes_.reserve(table.size());
  for (const auto& m : table) {
    // e^{+-x}/z_k written as (1 +- tanh x)/2; only the difference survives.
    modes_.push_back({2.0 * params.j * m.lambda, 2.0 * params.j * m.lambda_tilde,
                      std::cos(2.0 * m.alpha), std::tanh(2.0 * params.j * params.beta * m.lambda)});
  }
}

Complex FreeDecoherence::operator()(double t) const {
  double re = 1.0;
  double im = 0.0;
  for (const auto& m : modes_) {
    const double g = m.energy * t;
    const double gt = m.energy_tilde * t;
    const double cg = std::cos(g), sg = std::sin(g);
    const double cgt = std::cos(gt), sgt = std::sin(gt);
    const double mode_re = cg * cgt + sg * sgt * m.cos_2alpha;
    const double mode_im = m.polarization * (cg * sgt * m.cos_2alpha - sg * cgt);
    multiply_into(re, im, mode_re, mode_im);
  }
  const double phase = 2.0 * f_ * t;
  if (phase != 0.0) multiply_into(re, im, std::cos(phase), std::sin(phase));
  return checked(re, im, t, "decoherence factor");
}

PulseAxis pulse_axis(double k, const BathParams& params, const PulseConfig& pulses) {
  const double hb = params.h_bar();
  const double sk = std::sin(k);
  const double ck = std::cos(k) + hb;
  const double eps_t = params.epsilon * pulses.period;
  PulseAxis axis;
  axis.lambda_p = std::sqrt(ck * ck + (1.0 + eps_t * eps_t / 4.0) * sk * sk);
  if (axis.lambda_p == 0.0) return axis;
  axis.nx = eps_t * sk / (2.0 * axis.lambda_p);
  axis.ny = sk / axis.lambda_p;
  axis.nz = ck / axis.lambda_p;
  return axis;
}

PulsedDecoherence::PulsedDecoherence(const BathParams& params, const PulseConfig& pulses) {
  validate(params);
  if (!pulses.enabled) throw ConfigError("pulsed decoherence requires pulses.enabled");
  if (!(pulses.period > 0.0) || !std::isfinite(pulses.period))
    throw ConfigError("pulse period must be positive");
  const double thermal_h = pulses.thermal_field == ThermalField::h_bar ? params.h_bar() : params.h;
  const auto ks = mode_grid(params.n_spins);
  modes_.reserve(ks.size());
  for (double k : ks) {
    const auto axis = pulse_axis(k, params, pulses);
    const double lambda = mode_energy(k, thermal_h);
    const double theta = lambda == 0.0 ? 0.0 : mode_angle(k, thermal_h);
    const double polarization = std::tanh(2.0 * params.j * params.beta * lambda);
    modes_.push_back({2.0 * params.j * axis.lambda_p, 2.0 * axis.nx * axis.nx,
                      2.0 * axis.nx * (axis.ny * std::cos(theta) - axis.nz * std::sin(theta)) *
                          polarization});
  }
}

Complex PulsedDecoherence::operator()(double t) const {
  double re = 1.0;
  double im = 0.0;
  for (const auto& m : modes_) {
    const double s = std::sin(m.energy * t);
    const double s2 = s * s;
    multiply_into(re, im, 1.0 - m.loss * s2, m.twist * s2);
  }
  return checked(re, im, t, "effective decoherence factor");
}

Complex decoherence_factor(const BathParams& params, double t) {
  return FreeDecoherence(params)(t);
}

Complex effective_decoherence_factor(const BathParams& params, const PulseConfig& pulses,
                                     double t) {
  return PulsedDecoherence(params, pulses)(t);
}

namespace {

template <typename Kernel>
void fill_serial(const Kernel& kernel, DecoherenceTrajectory& traj) {
  const auto& ts = traj.grid.samples();
  for (std::size_t i = 0; i < ts.size(); ++i) traj.values[i] = kernel(ts[i]);
}

template <typename Kernel>
void fill_parallel(const Kernel& kernel, DecoherenceTrajectory& traj) {
  const auto& ts = traj.grid.samples();
  const auto n = static_cast<long>(ts.size());
  // Lowest failing index wins so the reported error is thread-count independent.
  long first_bad = std::numeric_limits<long>::max();
  ISINGBATH_OMP_PRAGMA("omp parallel for schedule(static) reduction(min : first_bad)")
  for (long i = 0; i < n; ++i) {
    try {
      traj.values[static_cast<std::size_t>(i)] = kernel(ts[static_cast<std::size_t>(i)]);
    } catch (const ComputationError&) {
      if (i < first_bad) first_bad = i;
    }
  }
  if (first_bad != std::numeric_limits<long>::max())
    traj.values[static_cast<std::size_t>(first_bad)] = kernel(ts[static_cast<std::size_t>(first_bad)]);
}

DecoherenceTrajectory empty_trajectory(const TimeGrid& grid) {
  DecoherenceTrajectory traj{grid, {}, {}, {}};
  const auto n = grid.samples().size();
  traj.values.resize(n);
  traj.magnitude.resize(n);
  traj.echo.resize(n);
  return traj;
}

void finish(DecoherenceTrajectory& traj) {
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    traj.magnitude[i] = std::abs(traj.values[i]);
    traj.echo[i] = traj.magnitude[i] * traj.magnitude[i];
  }
}

template <bool Parallel>
DecoherenceTrajectory compute(const BathParams& params, const TimeGrid& grid,
                              const PulseConfig& pulses) {
  auto traj = empty_trajectory(grid);
  if (pulses.enabled) {
    const PulsedDecoherence kernel(params, pulses);
    if constexpr (Parallel) fill_parallel(kernel, traj); else fill_serial(kernel, traj);
  } else {
    const FreeDecoherence kernel(params);
    if constexpr (Parallel) fill_parallel(kernel, traj); else fill_serial(kernel, traj);
  }
  finish(traj);
  return traj;
}

}  // namespace

DecoherenceTrajectory trajectory(const BathParams& params, const TimeGrid& grid,
                                 const PulseConfig& pulses) {
  return compute<true>(params, grid, pulses);
}

DecoherenceTrajectory trajectory_serial(const BathParams& params, const TimeGrid& grid,
                                        const PulseConfig& pulses) {
  return compute<false>(params, grid, pulses);
}

std::vector<double> loschmidt_echo(const DecoherenceTrajectory& traj) {
  std::vector<double> echo(traj.magnitude.size());
  for (std::size_t i = 0; i < echo.size(); ++i) echo[i] = traj.magnitude[i] * traj.magnitude[i];
  return echo;
}

}  // namespace isingbath
