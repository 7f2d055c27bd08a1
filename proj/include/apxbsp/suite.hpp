// Seeded inequality suites over generated spectra, run on a worker pool.
// Results are stored by case index, so output does not depend on scheduling.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apxbsp/jackson.hpp"
#include "apxbsp/spectrum.hpp"

namespace apxbsp {

/// APXBSP_THREADS if set to a positive integer, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. The first
/// exception (by index) is rethrown after all workers finish.
void parallel_for(int count, const std::function<void(int)>& body);

struct SuiteCase {
  int index = 0;
  SpectrumKind kind = SpectrumKind::arithmetic;
  int size = 0;
  double decay = 0.0;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  double p = 2.0;
  int n = 1;
  double tau_flat = 0.0;

  Spectrum spectrum() const;
  std::string describe() const;
};

/// `count` cases of one kind: sizes 4..32 (lacunary 3..10), decay in [0.5, 2.5],
/// alpha and p cycling through {1, 2} x {1, 2, 3}, n uniform on the ladder,
/// flat-mode tau cycling through {0.5, 2.0, 3 pi / 4}.
std::vector<SuiteCase> make_corpus(SpectrumKind kind, int count, std::uint64_t master_seed);

/// Every case repeated for all (alpha, p) in {1, 2} x {1, 2, 3}, same spectrum and n.
std::vector<SuiteCase> expand_orders(const std::vector<SuiteCase>& cases);

struct SuiteFailure {
  std::string case_id;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string status;
};

struct SuiteSummary {
  int cases = 0;
  int checks = 0;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  int not_applicable = 0;
  /// Largest lhs/rhs per check name.
  std::vector<std::pair<std::string, double>> max_ratio;
  std::vector<SuiteFailure> failures;  // fail and inconclusive, in case order
  double seconds = 0.0;

  Status status() const;
};

struct SuiteOptions {
  int grid = 4096;
  int ugrid = 512;
};

/// Direct estimates: pointwise (sharp LP constant and closed-form uniform
/// constant), averaged sin and averaged flat.
SuiteSummary run_direct_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& o = {});

/// Inverse estimates (general with phi_alpha at tau = pi, power, bounded gap)
/// plus the dominance chain general <= power <= gap to 1e-10 relative.
SuiteSummary run_inverse_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& o = {});

}  // namespace apxbsp
