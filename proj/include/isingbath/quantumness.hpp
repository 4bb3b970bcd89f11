#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "isingbath/decoherence.hpp"

namespace isingbath {

/// (I + c1 XX + c2 YY + c3 ZZ) / 4 on the system-ancilla pair.
struct BellDiagonalState {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  /// Validated construction; throws ConfigError for |c_i| > 1 or a negative
  /// eigenvalue below -1e-12.
  static BellDiagonalState make(double c1, double c2, double c3);

  /// Bounds-only construction (|c_i| <= 1) for correlation triples that lie
  /// outside the positive tetrahedron; the median rule does not need positivity.
  static BellDiagonalState coefficients(double c1, double c2, double c3);

  static BellDiagonalState maximally_entangled() { return {1.0, -1.0, 1.0}; }

  /// Eigenvalues in the Bell basis.
  std::array<double, 4> eigenvalues() const;

  /// Coefficients after dephasing with coherence magnitude |F|.
  BellDiagonalState dephased(double coherence) const {
    return {c1 * coherence, c2 * coherence, c3};
  }

  friend bool operator==(const BellDiagonalState&, const BellDiagonalState&) = default;
};

/// |c_i| <= 1 and all Bell-basis eigenvalues >= -1e-12.
void validate(const BellDiagonalState& state);
/// |c_i| <= 1 only.
void validate_bounds(const BellDiagonalState& state);

/// 4x4 density matrix in the basis |uu>, |ud>, |du>, |dd> (system first).
class TwoQubitDensityMatrix {
 public:
  using Matrix = Eigen::Matrix4cd;

  explicit TwoQubitDensityMatrix(const Matrix& m) : m_(m) {}

  static TwoQubitDensityMatrix from_bell_diagonal(const BellDiagonalState& s);

  const Matrix& matrix() const { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }

  /// Hermitian and unit trace within 1e-12, eigenvalues >= -1e-10.
  bool is_valid() const;

 private:
  Matrix m_;
};

/// Dephased X-state: diag (a, b, b, a), inner anti-diagonal z, corners
/// (w*, w) with a = (1+c3)/4, b = (1-c3)/4, z = (c1+c2)|F|/4, w = (c1-c2)F/4.
/// Throws ConfigError when |F| > 1 + 1e-9 or some |c_i| > 1. Positivity
/// is not re-checked here; use TwoQubitDensityMatrix::is_valid.
TwoQubitDensityMatrix evolve(const BellDiagonalState& state0, Complex coherence);

/// Undoes the phase of F with a local z rotation on both qubits and reads off
/// the Bell coefficients. Throws StructuralError if rho is not of the
/// evolve() form for this F.
BellDiagonalState rotate_to_bell_diagonal(const TwoQubitDensityMatrix& rho, Complex coherence);

/// Median of {|c1|, |c2|, |c3|}.
double negativity_of_quantumness(const BellDiagonalState& state);

/// Q_S(t) for every |F(t)| sample.
std::vector<double> quantumness_series(const BellDiagonalState& state0,
                                       std::span<const double> magnitude);

struct SuddenChange {
  double time = 0.0;
  double coherence = 0.0;  // |F| at the change
};

/// Times where the median switches branch: crossings of |c_i| |F(t)| with
/// |c3| located by sign change on the grid and refined by bisection on
/// magnitude_at.
std::vector<SuddenChange> detect_sudden_changes(const BellDiagonalState& state0,
                                                const TimeGrid& grid,
                                                std::span<const double> magnitude,
                                                const std::function<double(double)>& magnitude_at);

/// Same as above with |F| supplied by the free or pulsed decoherence factor.
std::vector<SuddenChange> detect_sudden_changes(const BellDiagonalState& state0,
                                                const BathParams& params,
                                                const PulseConfig& pulses,
                                                const DecoherenceTrajectory& traj);

}  // namespace isingbath
