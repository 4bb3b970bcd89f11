#include "isingbath/quantumness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "isingbath/errors.hpp"

namespace isingbath {

namespace {

constexpr double kPositivityTolerance = 1e-12;
constexpr double kStructureTolerance = 1e-10;
constexpr double kPhaseCutoff = 1e-14;

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace

std::array<double, 4> BellDiagonalState::eigenvalues() const {
  return {(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0,
          (1.0 + c1 + c2 - c3) / 4.0};
}

void validate_bounds(const BellDiagonalState& s) {
  for (double c : {s.c1, s.c2, s.c3}) {
    if (!std::isfinite(c) || std::abs(c) > 1.0) {
      std::ostringstream msg;
      msg << "Bell coefficients must satisfy |c_i| <= 1, got (" << s.c1 << ", " << s.c2 << ", "
          << s.c3 << ")";
      throw ConfigError(msg.str());
    }
  }
}

void validate(const BellDiagonalState& s) {
  validate_bounds(s);
  for (double lambda : s.eigenvalues()) {
    if (lambda < -kPositivityTolerance) {
      std::ostringstream msg;
      msg << "Bell coefficients (" << s.c1 << ", " << s.c2 << ", " << s.c3
          << ") do not describe a positive state";
      throw ConfigError(msg.str());
    }
  }
}

BellDiagonalState BellDiagonalState::make(double c1, double c2, double c3) {
  BellDiagonalState s{c1, c2, c3};
  validate(s);
  return s;
}

BellDiagonalState BellDiagonalState::coefficients(double c1, double c2, double c3) {
  BellDiagonalState s{c1, c2, c3};
  validate_bounds(s);
  return s;
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::from_bell_diagonal(const BellDiagonalState& s) {
  return evolve(s, Complex{1.0, 0.0});
}

bool TwoQubitDensityMatrix::is_valid() const {
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return false;
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > 1e-12) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -1e-10;
}

TwoQubitDensityMatrix evolve(const BellDiagonalState& state0, Complex coherence) {
  validate_bounds(state0);
  const double mag = std::abs(coherence);
  if (!(mag <= 1.0 + 1e-9))
    throw ConfigError("decoherence factor modulus exceeds 1: " + std::to_string(mag));
  const double a = (1.0 + state0.c3) / 4.0;
  const double b = (1.0 - state0.c3) / 4.0;
  const double z = (state0.c1 + state0.c2) * mag / 4.0;
  const Complex w = (state0.c1 - state0.c2) * coherence / 4.0;

  TwoQubitDensityMatrix::Matrix m = TwoQubitDensityMatrix::Matrix::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = a;
  m(1, 2) = z;
  m(2, 1) = z;
  m(0, 3) = std::conj(w);
  m(3, 0) = w;
  return TwoQubitDensityMatrix(m);
}

BellDiagonalState rotate_to_bell_diagonal(const TwoQubitDensityMatrix& rho, Complex coherence) {
  const auto& m = rho.matrix();
  auto fail = [](const std::string& what) {
    throw StructuralError("density matrix is not a dephased Bell-diagonal X-state: " + what);
  };
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool x_entry = r == c || r + c == 3;
      if (!x_entry && std::abs(m(r, c)) > kStructureTolerance) fail("nonzero off-X entry");
    }
  }
  if (std::abs(m(0, 0) - m(3, 3)) > kStructureTolerance ||
      std::abs(m(1, 1) - m(2, 2)) > kStructureTolerance)
    fail("unequal diagonal pairs");
  if (std::abs(m(1, 2) - m(2, 1)) > kStructureTolerance ||
      std::abs(m(1, 2).imag()) > kStructureTolerance)
    fail("inner coherence not real and symmetric");
  if (std::abs(m(0, 3) - std::conj(m(3, 0))) > kStructureTolerance)
    fail("outer coherence not Hermitian");

  // V = exp(-i phi sz / 4) (x) exp(-i phi sz / 4) leaves the inner block alone
  // and multiplies the outer coherence w by exp(-i phi).
  const double phi =
      std::abs(coherence) < kPhaseCutoff ? 0.0 : std::atan2(coherence.imag(), coherence.real());
  const Complex w_rot = m(3, 0) * std::polar(1.0, -phi);
  if (std::abs(w_rot.imag()) > kStructureTolerance) fail("outer coherence phase does not match F");

  const double z = m(1, 2).real();
  BellDiagonalState s;
  s.c1 = 2.0 * (z + w_rot.real());
  s.c2 = 2.0 * (z - w_rot.real());
  s.c3 = (m(0, 0).real() + m(3, 3).real()) - (m(1, 1).real() + m(2, 2).real());
  return s;
}

double negativity_of_quantumness(const BellDiagonalState& s) {
  return median3(std::abs(s.c1), std::abs(s.c2), std::abs(s.c3));
}

std::vector<double> quantumness_series(const BellDiagonalState& state0,
                                       std::span<const double> magnitude) {
  std::vector<double> q(magnitude.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = negativity_of_quantumness(state0.dephased(magnitude[i]));
  return q;
}

namespace {

// The median either sits on |c3| (constant) or on some |c_i| |F|. Two branches
// are the same when both scale |F| with the same coefficient.
struct Branch {
  bool constant;
  double slope;
  bool operator==(const Branch&) const = default;
};

Branch branch_at(const BellDiagonalState& s, double coherence) {
  const double a = std::abs(s.c1) * coherence;
  const double b = std::abs(s.c2) * coherence;
  const double c = std::abs(s.c3);
  const double med = median3(a, b, c);
  if (med == c && a != c && b != c) return {true, 0.0};
  if (med == a) return {false, std::abs(s.c1)};
  return {false, std::abs(s.c2)};
}

}  // namespace

std::vector<SuddenChange> detect_sudden_changes(const BellDiagonalState& state0,
                                                const TimeGrid& grid,
                                                std::span<const double> magnitude,
                                                const std::function<double(double)>& magnitude_at) {
  const auto& ts = grid.samples();
  if (magnitude.size() != ts.size())
    throw ConfigError("magnitude series does not match the time grid");
  const double c3 = std::abs(state0.c3);
  std::vector<SuddenChange> changes;

  std::vector<double> coefficients{std::abs(state0.c1)};
  if (std::abs(state0.c2) != coefficients[0]) coefficients.push_back(std::abs(state0.c2));
  for (double coefficient : coefficients) {  // equal |c1|, |c2| share one gap
    if (coefficient == 0.0) continue;
    auto gap = [&](double mag) { return coefficient * mag - c3; };
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double g0 = gap(magnitude[i]);
      const double g1 = gap(magnitude[i + 1]);
      if (!((g0 > 0.0 && g1 < 0.0) || (g0 < 0.0 && g1 > 0.0))) continue;
      if (branch_at(state0, magnitude[i]) == branch_at(state0, magnitude[i + 1])) continue;
      double lo = ts[i], hi = ts[i + 1];
      double glo = g0;
      for (int iter = 0; iter < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(magnitude_at(mid));
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm > 0.0) == (glo > 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      const double t = 0.5 * (lo + hi);
      changes.push_back({t, magnitude_at(t)});
    }
  }
  std::sort(changes.begin(), changes.end(),
            [](const SuddenChange& x, const SuddenChange& y) { return x.time < y.time; });
  return changes;
}

std::vector<SuddenChange> detect_sudden_changes(const BellDiagonalState& state0,
                                                const BathParams& params,
                                                const PulseConfig& pulses,
                                                const DecoherenceTrajectory& traj) {
  if (pulses.enabled) {
    const PulsedDecoherence kernel(params, pulses);
    return detect_sudden_changes(state0, traj.grid, traj.magnitude,
                                 [&](double t) { return std::abs(kernel(t)); });
  }
  const FreeDecoherence kernel(params);
  return detect_sudden_changes(state0, traj.grid, traj.magnitude,
                               [&](double t) { return std::abs(kernel(t)); });
}

}  // namespace isingbath
