#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "isingbath/oracles.hpp"

namespace isingbath::oracle {

SuiteReport run_dense_mode_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> field(-2.0, 2.0), coupling(-1.0, 1.0), bond(0.5, 2.0),
      beta(0.0, 5.0), splitting(-1.0, 1.0), time(0.0, 10.0);
  SuiteReport report{"dense-mode decoherence factor", 0, 0.0, 1e-9};
  for (int n : {2, 4, 6}) {
    for (int set = 0; set < 20; ++set) {
      BathParams p{n, field(rng), bond(rng), coupling(rng), splitting(rng), beta(rng)};
      const FreeDecoherence closed_form(p);
      for (int s = 0; s < 10; ++s) {
        const double t = time(rng);
        report.max_error = std::max(report.max_error, std::abs(closed_form(t) - dense_mode_factor(p, t)));
        ++report.cases;
      }
    }
  }
  return report;
}

SuiteReport run_trace_norm_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0), unit(0.0, 1.0),
      phase(-std::numbers::pi, std::numbers::pi);
  SuiteReport report{"trace-norm negativity of quantumness", 0, 0.0, 1e-5};
  while (report.cases < count) {
    BellDiagonalState s{coeff(rng), coeff(rng), coeff(rng)};
    const auto ev = s.eigenvalues();
    if (*std::min_element(ev.begin(), ev.end()) < 0.0) continue;
    const Complex F = std::polar(unit(rng), phase(rng));
    const double closed = negativity_of_quantumness(s.dephased(std::abs(F)));
    const double brute = trace_norm_oracle(evolve(s, F)).value;
    report.max_error = std::max(report.max_error, std::abs(closed - brute));
    ++report.cases;
  }
  return report;
}

}  // namespace isingbath::oracle
