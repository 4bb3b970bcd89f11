#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "isingbath/oracles.hpp"

namespace isingbath::oracle {

namespace {

constexpr int kPolarCells = 48;
constexpr int kAzimuthCells = 96;
constexpr int kRefinementStarts = 4;
constexpr int kMaxIterations = 4000;
constexpr double kObjectiveTolerance = 1e-8;

using Point = std::array<double, 2>;

struct Simplex {
  std::array<Point, 3> x;
  std::array<double, 3> f;
};

template <typename Objective>
TraceNormResult nelder_mead(const Objective& objective, Point start, Point step, int& evaluations) {
  Simplex s;
  s.x = {start, Point{start[0] + step[0], start[1]}, Point{start[0], start[1] + step[1]}};
  for (int i = 0; i < 3; ++i) s.f[i] = objective(s.x[i]);
  evaluations += 3;

  auto combine = [](const Point& a, const Point& b, double t) {
    return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  };
  bool converged = false;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    const double size = std::max(std::hypot(s.x[worst][0] - s.x[best][0], s.x[worst][1] - s.x[best][1]),
                                 std::hypot(s.x[mid][0] - s.x[best][0], s.x[mid][1] - s.x[best][1]));
    if (s.f[worst] - s.f[best] < 1e-13 && size < 1e-9) {
      converged = true;
      break;
    }
    const Point centroid{0.5 * (s.x[best][0] + s.x[mid][0]), 0.5 * (s.x[best][1] + s.x[mid][1])};
    const Point reflected = combine(centroid, s.x[worst], -1.0);
    const double fr = objective(reflected);
    ++evaluations;
    if (fr < s.f[best]) {
      const Point expanded = combine(centroid, s.x[worst], -2.0);
      const double fe = objective(expanded);
      ++evaluations;
      if (fe < fr) { s.x[worst] = expanded; s.f[worst] = fe; }
      else { s.x[worst] = reflected; s.f[worst] = fr; }
    } else if (fr < s.f[mid]) {
      s.x[worst] = reflected;
      s.f[worst] = fr;
    } else {
      const bool outside = fr < s.f[worst];
      const Point contracted = combine(centroid, outside ? reflected : s.x[worst], 0.5);
      const double fc = objective(contracted);
      ++evaluations;
      if (fc < std::min(fr, s.f[worst])) {
        s.x[worst] = contracted;
        s.f[worst] = fc;
      } else {
        for (int i : {mid, worst}) {
          s.x[i] = combine(s.x[best], s.x[i], 0.5);
          s.f[i] = objective(s.x[i]);
          ++evaluations;
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
  const double spread = *std::max_element(s.f.begin(), s.f.end()) - s.f[best];
  TraceNormResult r;
  r.value = s.f[best];
  r.polar = s.x[best][0];
  r.azimuth = s.x[best][1];
  r.converged = converged || spread <= kObjectiveTolerance;
  return r;
}

}  // namespace

double measured_distance(const TwoQubitDensityMatrix& rho, double polar, double azimuth) {
  using Matrix4 = TwoQubitDensityMatrix::Matrix;
  const Complex i{0.0, 1.0};
  const double nx = std::sin(polar) * std::cos(azimuth);
  const double ny = std::sin(polar) * std::sin(azimuth);
  const double nz = std::cos(polar);
  Eigen::Matrix2cd n_sigma;
  n_sigma << nz, nx - i * ny, nx + i * ny, -nz;
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Matrix4 chi = Matrix4::Zero();
  for (double sign : {1.0, -1.0}) {
    const Eigen::Matrix2cd p2 = 0.5 * (id2 + sign * n_sigma);
    Matrix4 projector;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) projector(2 * a + c, 2 * b + d) = p2(a, b) * id2(c, d);
    chi += projector * rho.matrix() * projector;
  }
  // rho - chi is Hermitian, so its singular values are |eigenvalues|.
  const Matrix4 diff = rho.matrix() - chi;
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

TraceNormResult trace_norm_oracle(const TwoQubitDensityMatrix& rho) {
  const double d_polar = std::numbers::pi / (kPolarCells - 1);
  const double d_azimuth = 2.0 * std::numbers::pi / kAzimuthCells;
  std::vector<double> grid(kPolarCells * kAzimuthCells);
  for (int a = 0; a < kPolarCells; ++a)
    for (int b = 0; b < kAzimuthCells; ++b)
      grid[static_cast<std::size_t>(a * kAzimuthCells + b)] =
          measured_distance(rho, a * d_polar, b * d_azimuth);
  int evaluations = static_cast<int>(grid.size());

  std::vector<std::size_t> cells(grid.size());
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  std::stable_sort(cells.begin(), cells.end(),
                   [&](std::size_t x, std::size_t y) { return grid[x] < grid[y]; });

  auto objective = [&](const Point& p) { return measured_distance(rho, p[0], p[1]); };
  // The first start is the best grid cell and its simplex contains that cell,
  // so refinement never ends above the grid minimum.
  TraceNormResult best;
  for (int start = 0; start < kRefinementStarts; ++start) {
    const std::size_t cell = cells[static_cast<std::size_t>(start)];
    const Point origin{static_cast<double>(cell / kAzimuthCells) * d_polar,
                       static_cast<double>(cell % kAzimuthCells) * d_azimuth};
    const auto r = nelder_mead(objective, origin, Point{d_polar, d_azimuth}, evaluations);
    if (start == 0 || r.value < best.value) best = r;
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace isingbath::oracle
