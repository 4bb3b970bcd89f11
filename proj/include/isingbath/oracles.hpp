#pragma once

#include <cstdint>
#include <string>

#include "isingbath/bath_spectrum.hpp"
#include "isingbath/decoherence.hpp"
#include "isingbath/quantumness.hpp"

// Brute-force reference computations used by the test suites and the
// `oracle-check` subcommand. Kept out of the core library.
namespace isingbath::oracle {

/// Decoherence factor from explicit 4x4 Fock-space matrices of each (k, -k)
/// fermion pair, exponentiated by eigendecomposition. The thermal state is
/// restricted to the paired (even-parity) sector, which carries the
/// 2 cosh(2 J beta Lambda_k) partition weight of the closed form.
Complex dense_mode_factor(const BathParams& params, double t);

struct TraceNormResult {
  double value = 0.0;
  double polar = 0.0;    // measurement axis on S
  double azimuth = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// || rho - chi ||_1 for the post-measurement state chi of a projective
/// measurement on S along (polar, azimuth).
double measured_distance(const TwoQubitDensityMatrix& rho, double polar, double azimuth);

/// Minimum of measured_distance: 48 x 96 angle grid, then Nelder-Mead from
/// the best cells down to 1e-8 in the objective.
TraceNormResult trace_norm_oracle(const TwoQubitDensityMatrix& rho);

struct SuiteReport {
  std::string name;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

/// Closed-form F(t) vs dense_mode_factor for N in {2, 4, 6}, 20 random
/// parameter sets each, 10 random times in [0, 10].
SuiteReport run_dense_mode_suite(std::uint64_t seed);

/// Median rule vs trace_norm_oracle on `count` random dephased Bell states.
SuiteReport run_trace_norm_suite(std::uint64_t seed, int count = 100);

}  // namespace isingbath::oracle
