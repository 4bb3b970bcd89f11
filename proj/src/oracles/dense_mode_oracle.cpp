#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "isingbath/oracles.hpp"

namespace isingbath::oracle {

namespace {

using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

// Fermion pair (k, -k) in the occupation basis |n_k n_-k>, index 2 n_k + n_-k,
// with the Jordan-Wigner string on the second mode.
struct PairOperators {
  Matrix4 c1, c2;
  PairOperators() {
    Matrix2 a = Matrix2::Zero();
    a(0, 1) = 1.0;
    Matrix2 z = Matrix2::Identity();
    z(1, 1) = -1.0;
    c1 = kron(a, Matrix2::Identity());
    c2 = kron(z, a);
  }
};

Matrix4 pair_hamiltonian(const PairOperators& ops, double k, double h, double j) {
  const Complex i{0.0, 1.0};
  const Matrix4 n1 = ops.c1.adjoint() * ops.c1;
  const Matrix4 n2 = ops.c2.adjoint() * ops.c2;
  const Matrix4 pair = ops.c1.adjoint() * ops.c2.adjoint();
  const Matrix4 H = (std::cos(k) + h) * (n1 + n2 - Matrix4::Identity()) +
                    i * std::sin(k) * (pair - pair.adjoint());
  return 2.0 * j * H;
}

// exp(i s H t) for Hermitian H.
Matrix4 unitary(const Matrix4& H, double sign_t) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(H);
  Eigen::Vector4cd phases;
  for (int n = 0; n < 4; ++n) phases(n) = std::polar(1.0, sign_t * solver.eigenvalues()(n));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix4 paired_thermal_state(const Matrix4& H, double beta) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(H);
  const double e_min = solver.eigenvalues().minCoeff();
  Eigen::Vector4cd weights;
  for (int n = 0; n < 4; ++n) weights(n) = std::exp(-beta * (solver.eigenvalues()(n) - e_min));
  Matrix4 rho = solver.eigenvectors() * weights.asDiagonal() * solver.eigenvectors().adjoint();
  Matrix4 even = Matrix4::Zero();
  even(0, 0) = 1.0;
  even(3, 3) = 1.0;
  rho = even * rho * even;
  return rho / rho.trace();
}

}  // namespace

Complex dense_mode_factor(const BathParams& params, double t) {
  validate(params);
  const PairOperators ops;
  Complex total{1.0, 0.0};
  const int half = params.n_spins / 2;
  for (int m = 1; m <= half; ++m) {
    const double k = (2.0 * m - 1.0) * std::numbers::pi / params.n_spins;
    const Matrix4 h_up = pair_hamiltonian(ops, k, params.h, params.j);
    const Matrix4 h_down = pair_hamiltonian(ops, k, params.h + params.epsilon / params.j, params.j);
    const Matrix4 rho = paired_thermal_state(h_up, params.beta);
    total *= (rho * unitary(h_up, t) * unitary(h_down, -t)).trace();
  }
  // H_up = f + H_E(h), H_down = -f + H_E(h~): the identity parts give exp(2ift).
  return total * std::polar(1.0, 2.0 * params.f * t);
}

}  // namespace isingbath::oracle
