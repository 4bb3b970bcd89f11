#include "isingbath/bath_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isingbath/errors.hpp"

namespace isingbath {

void validate(const BathParams& params) {
  if (params.n_spins < 2 || params.n_spins % 2 != 0)
    throw ConfigError("n_spins must be even and >= 2, got " + std::to_string(params.n_spins));
  if (!(params.j > 0.0) || !std::isfinite(params.j))
    throw ConfigError("j must be positive and finite");
  if (!(params.beta >= 0.0) || !std::isfinite(params.beta))
    throw ConfigError("beta must be finite and >= 0");
  if (!std::isfinite(params.h)) throw ConfigError("h must be finite");
  if (!std::isfinite(params.epsilon)) throw ConfigError("epsilon must be finite");
  if (!std::isfinite(params.f)) throw ConfigError("f must be finite");
}

std::vector<double> mode_grid(int n_spins) {
  if (n_spins < 2 || n_spins % 2 != 0)
    throw ConfigError("mode grid needs an even bath size >= 2, got " + std::to_string(n_spins));
  const int half = n_spins / 2;
  std::vector<double> ks(static_cast<std::size_t>(half));
  for (int m = 1; m <= half; ++m)
    ks[static_cast<std::size_t>(m - 1)] = (2.0 * m - 1.0) * std::numbers::pi / n_spins;
  return ks;
}

double mode_energy(double k, double h) { return std::hypot(std::cos(k) + h, std::sin(k)); }

double mode_angle(double k, double h) {
  const double x = std::cos(k) + h;
  const double y = std::sin(k);
  if (x == 0.0 && y == 0.0) return 0.0;
  return std::atan2(y, x);
}

ModeData mode_data(double k, double h, double h_tilde) {
  ModeData m;
  m.k = k;
  m.lambda = mode_energy(k, h);
  m.theta = m.lambda == 0.0 ? 0.0 : mode_angle(k, h);
  m.lambda_tilde = mode_energy(k, h_tilde);
  m.theta_tilde = m.lambda_tilde == 0.0 ? 0.0 : mode_angle(k, h_tilde);
  m.alpha = 0.5 * (m.theta_tilde - m.theta);
  return m;
}

std::vector<ModeData> mode_table(const BathParams& params) {
  validate(params);
  const auto ks = mode_grid(params.n_spins);
  std::vector<ModeData> table;
  table.reserve(ks.size());
  for (double k : ks) table.push_back(mode_data(k, params.h, params.h_tilde()));
  return table;
}

}  // namespace isingbath
