#pragma once

#include <vector>

namespace isingbath {

/// Physical parameters of the qubit + transverse-field Ising bath.
/// Energies are in units where the bath coupling j sets the scale.
struct BathParams {
  int n_spins = 2;       // bath size N, even
  double h = 0.0;        // transverse field
  double j = 1.0;        // nearest-neighbour coupling J, > 0
  double epsilon = 0.0;  // qubit-bath coupling
  double f = 0.0;        // qubit level splitting
  double beta = 0.0;     // inverse temperature, >= 0

  /// Field seen by the bath when the qubit is down.
  double h_tilde() const { return h + epsilon / j; }
  /// Effective field under bang-bang control, h + epsilon*J/2.
  double h_bar() const { return h + epsilon * j / 2.0; }

  friend bool operator==(const BathParams&, const BathParams&) = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const BathParams& params);

/// Per-wavenumber quasiparticle data at fields h and h_tilde.
struct ModeData {
  double k = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  double lambda_tilde = 0.0;
  double theta_tilde = 0.0;
  double alpha = 0.0;  // (theta_tilde - theta) / 2
};

/// k_m = (2m - 1) pi / N for m = 1..N/2. Throws ConfigError for odd or
/// non-positive N.
std::vector<double> mode_grid(int n_spins);

/// Quasiparticle energy Lambda_k(h) = |(cos k + h, sin k)|.
double mode_energy(double k, double h);

/// Bogoliubov angle, atan2(sin k, cos k + h); zero where the gap closes.
double mode_angle(double k, double h);

ModeData mode_data(double k, double h, double h_tilde);

/// mode_data for every k on the grid, ascending k.
std::vector<ModeData> mode_table(const BathParams& params);

}  // namespace isingbath
