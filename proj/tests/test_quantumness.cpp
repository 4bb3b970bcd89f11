#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "isingbath/errors.hpp"
#include "isingbath/oracles.hpp"
#include "isingbath/quantumness.hpp"

using namespace isingbath;
using Matrix = TwoQubitDensityMatrix::Matrix;

namespace {

BellDiagonalState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    BellDiagonalState s{u(rng), u(rng), u(rng)};
    bool ok = true;
    for (double l : s.eigenvalues()) ok = ok && l >= 0.0;
    if (ok) return s;
  }
}

Complex random_coherence(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.0, 1.0), ph(-std::numbers::pi, std::numbers::pi);
  return std::polar(mag(rng), ph(rng));
}

TimeGrid exp_grid() { return TimeGrid(5.0, 501); }

std::vector<double> exp_decay(const TimeGrid& g) {
  std::vector<double> m;
  for (double t : g.samples()) m.push_back(std::exp(-t));
  return m;
}

}  // namespace

TEST_CASE("state validation") {
  CHECK_NOTHROW(BellDiagonalState::make(0.42, -0.17, 0.65));
  CHECK_NOTHROW(BellDiagonalState::make(1.0, -1.0, 1.0));
  CHECK_THROWS_AS(BellDiagonalState::make(1.2, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(BellDiagonalState::make(0.9, 0.3, 0.5), ConfigError);  // eigenvalue -0.175
  CHECK_THROWS_AS(BellDiagonalState::make(0.6, 0.6, 0.8), ConfigError);
  CHECK_NOTHROW(BellDiagonalState::make(0.6, -0.6, 0.8));
  CHECK_NOTHROW(BellDiagonalState::coefficients(0.9, 0.3, 0.5));
  CHECK_THROWS_AS(BellDiagonalState::coefficients(0.9, -1.3, 0.5), ConfigError);
  CHECK_THROWS_AS(BellDiagonalState::coefficients(std::nan(""), 0.0, 0.0), ConfigError);
  const auto ev = BellDiagonalState::maximally_entangled().eigenvalues();
  CHECK(ev[0] == 0.0);
  CHECK(ev[1] == 0.0);
  CHECK(ev[2] == 1.0);
  CHECK(ev[3] == 0.0);
}

TEST_CASE("evolve examples") {
  const auto s = BellDiagonalState::make(0.42, -0.17, 0.65);
  const auto rho0 = evolve(s, Complex(1.0, 0.0));
  const double a = (1 + 0.65) / 4, b = (1 - 0.65) / 4;
  CHECK(rho0(0, 0).real() == doctest::Approx(a));
  CHECK(rho0(1, 1).real() == doctest::Approx(b));
  CHECK(rho0(1, 2).real() == doctest::Approx((0.42 - 0.17) / 4));
  CHECK(rho0(3, 0).real() == doctest::Approx((0.42 + 0.17) / 4));
  CHECK(rho0.is_valid());

  // explicit (I + c1 XX + c2 YY + c3 ZZ) / 4
  Matrix x = Matrix::Zero(), y = Matrix::Zero(), z = Matrix::Zero();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const Eigen::Matrix2cd& p, const Eigen::Matrix2cd& q) {
    Matrix m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = p(i, j) * q(k, l);
    return m;
  };
  x = kron(sx, sx);
  y = kron(sy, sy);
  z = kron(sz, sz);
  const Matrix expected = (Matrix::Identity() + 0.42 * x - 0.17 * y + 0.65 * z) / 4.0;
  CHECK((rho0.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);

  const auto dead = evolve(s, Complex(0.0, 0.0));
  CHECK(dead(1, 2) == Complex(0.0, 0.0));
  CHECK(dead(3, 0) == Complex(0.0, 0.0));
  CHECK(dead(0, 0).real() == doctest::Approx(a));
  CHECK(dead(2, 2).real() == doctest::Approx(b));

  const auto c = BellDiagonalState::coefficients(0.6, 0.6, 0.8);
  const auto r = evolve(c, std::polar(0.5, std::numbers::pi / 3));
  CHECK(r(1, 2).real() == doctest::Approx(0.15));
  CHECK(std::abs(r(3, 0)) == 0.0);

  CHECK_THROWS_AS(evolve(s, Complex(1.1, 0.0)), ConfigError);
}

TEST_CASE("rotation recovers the dephased coefficients") {
  const auto s = BellDiagonalState::make(0.42, -0.17, 0.65);
  const auto same = rotate_to_bell_diagonal(evolve(s, 1.0), 1.0);
  CHECK(same.c1 == doctest::Approx(0.42).epsilon(1e-14));
  CHECK(same.c2 == doctest::Approx(-0.17).epsilon(1e-14));
  CHECK(same.c3 == doctest::Approx(0.65).epsilon(1e-14));

  const auto gone = rotate_to_bell_diagonal(evolve(s, 0.0), 0.0);
  CHECK(std::abs(gone.c1) < 1e-15);
  CHECK(std::abs(gone.c2) < 1e-15);

  const auto c = BellDiagonalState::coefficients(0.9, 0.5, 0.3);
  const auto r = rotate_to_bell_diagonal(evolve(c, std::polar(0.4, 1.1)), std::polar(0.4, 1.1));
  CHECK(r.c1 == doctest::Approx(0.36).epsilon(1e-13));
  CHECK(r.c2 == doctest::Approx(0.20).epsilon(1e-13));
  CHECK(r.c3 == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("rotation rejects matrices outside the X form") {
  const auto s = BellDiagonalState::make(0.42, -0.17, 0.65);
  Matrix m = evolve(s, 0.7).matrix();
  m(0, 1) = 0.01;
  m(1, 0) = 0.01;
  CHECK_THROWS_AS(rotate_to_bell_diagonal(TwoQubitDensityMatrix(m), 0.7), StructuralError);
  // phase mismatch between rho and F
  CHECK_THROWS_AS(rotate_to_bell_diagonal(evolve(s, std::polar(0.7, 0.5)), 0.7), StructuralError);
}

TEST_CASE("dephasing and rotation agree and c3 is conserved") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_state(rng);
    const Complex f = random_coherence(rng);
    const auto rho = evolve(s, f);
    CHECK(rho.is_valid());
    const auto direct = s.dephased(std::abs(f));
    CHECK(direct.c3 == s.c3);
    const auto rotated = rotate_to_bell_diagonal(rho, f);
    CHECK(std::abs(rotated.c1 - direct.c1) < 1e-14);
    CHECK(std::abs(rotated.c2 - direct.c2) < 1e-14);
    CHECK(std::abs(rotated.c3 - s.c3) < 1e-15);
  }
}

TEST_CASE("median rule examples") {
  CHECK(negativity_of_quantumness({0.5, 0.3, 0.9}) == 0.5);
  CHECK(negativity_of_quantumness({0.0, 0.0, 0.7}) == 0.0);
  CHECK(negativity_of_quantumness({0.42, -0.17, 0.65}) == 0.42);
  CHECK(negativity_of_quantumness({-1.0, -1.0, -1.0}) == 1.0);
  CHECK(negativity_of_quantumness({0.3, 0.3, 0.3}) == 0.3);
}

TEST_CASE("maximally entangled probe has Q = |F|") {
  const auto s = BellDiagonalState::maximally_entangled();
  const std::vector<double> mags{1.0, 0.8, 0.25, 0.0, 0.6};
  const auto q = quantumness_series(s, mags);
  CHECK(q == mags);
}

TEST_CASE("trace-norm oracle examples") {
  const auto s = BellDiagonalState::make(0.42, -0.17, 0.65);
  CHECK(oracle::trace_norm_oracle(evolve(s, 1.0)).value == doctest::Approx(0.42).epsilon(1e-6));

  const auto bell = BellDiagonalState::maximally_entangled();
  CHECK(std::abs(oracle::trace_norm_oracle(evolve(bell, 1.0)).value - 1.0) < 1e-6);

  // the coefficient triple (0.5, 0.3, 0.9) is not a state, but the distance is still defined
  const auto c = BellDiagonalState::coefficients(0.5, 0.3, 0.9);
  CHECK(std::abs(oracle::trace_norm_oracle(evolve(c, 1.0)).value - 0.5) < 1e-6);

  // product of two mixed qubit states
  Eigen::Matrix2cd rs, ra;
  rs << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  ra << 0.4, Complex(0.0, 0.3), Complex(0.0, -0.3), 0.6;
  Matrix m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = rs(i, j) * ra(k, l);
  const auto prod = oracle::trace_norm_oracle(TwoQubitDensityMatrix(m));
  CHECK(prod.value < 1e-6);
  CHECK(prod.converged);
}

TEST_CASE("median rule agrees with the trace-norm oracle on random states") {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_state(rng);
    const Complex f = random_coherence(rng);
    const double q = negativity_of_quantumness(s.dephased(std::abs(f)));
    const auto res = oracle::trace_norm_oracle(evolve(s, f));
    CHECK(std::abs(res.value - q) <= 1e-5);
  }
  CHECK(oracle::run_trace_norm_suite(8, 30).passed());
}

TEST_CASE("oracle is invariant under the local rotation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 25; ++i) {
    const auto s = random_state(rng);
    const Complex f = random_coherence(rng);
    const auto rho = evolve(s, f);
    const auto rotated = TwoQubitDensityMatrix::from_bell_diagonal(rotate_to_bell_diagonal(rho, f));
    CHECK(std::abs(oracle::trace_norm_oracle(rho).value -
                   oracle::trace_norm_oracle(rotated).value) <= 1e-6);
  }
}

TEST_CASE("quantumness is bounded by the running-maximum envelope") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_state(rng);
    std::vector<double> mag(200);
    for (auto& m : mag) m = u(rng);
    mag[0] = 1.0;
    const auto q = quantumness_series(s, mag);
    double running = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i) {
      running = std::max(running, mag[i]);
      CHECK(q[i] <= negativity_of_quantumness(s.dephased(running)) + 1e-15);
    }
  }
}

TEST_CASE("sudden changes on a synthetic exponential decay") {
  const auto grid = exp_grid();
  const auto mag = exp_decay(grid);
  auto at = [](double t) { return std::exp(-t); };

  SUBCASE("largest |c3| gives a single smooth branch") {
    CHECK(detect_sudden_changes(BellDiagonalState::coefficients(0.5, 0.3, 0.9), grid, mag, at)
              .empty());
  }
  SUBCASE("one change at |F| = |c3| / |c1|") {
    const auto ch =
        detect_sudden_changes(BellDiagonalState::coefficients(0.9, 0.3, 0.5), grid, mag, at);
    REQUIRE(ch.size() == 1);
    CHECK(ch[0].time == doctest::Approx(std::log(0.9 / 0.5)).epsilon(1e-12));
    CHECK(ch[0].coherence == doctest::Approx(0.5 / 0.9).epsilon(1e-12));
  }
  SUBCASE("two changes for |c1|, |c2| > |c3|") {
    const auto ch =
        detect_sudden_changes(BellDiagonalState::coefficients(0.9, -0.5, 0.3), grid, mag, at);
    REQUIRE(ch.size() == 2);
    CHECK(ch[0].coherence == doctest::Approx(0.3 / 0.5).epsilon(1e-12));
    CHECK(ch[1].coherence == doctest::Approx(0.3 / 0.9).epsilon(1e-12));
    CHECK(ch[0].time == doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-12));
    CHECK(ch[1].time == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  }
  SUBCASE("equal |c1| and |c2| keep the median on one branch") {
    CHECK(detect_sudden_changes(BellDiagonalState::coefficients(0.6, 0.6, 0.3), grid, mag, at)
              .empty());
    CHECK(detect_sudden_changes(BellDiagonalState::coefficients(0.6, -0.6, 0.8), grid, mag, at)
              .empty());
  }
  CHECK_THROWS_AS(detect_sudden_changes({0.9, 0.3, 0.5}, grid, std::vector<double>{1.0}, at),
                  ConfigError);
}
