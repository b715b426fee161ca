#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commexp/matrix.hpp"

namespace commexp {

// Scaling-and-squaring Taylor exponential. Independent of the spectral
// path in expm, so the two can cross-check each other.
CMatrix expm_series(const CMatrix& m);

// Linear-spectrum test by direct multiset matching of eigenvalues at random
// complex sample points, trying every pairing. Slower than the pencil
// coefficient test, but with no shared code path.
bool property_l_bruteforce(const CMatrix& a, const CMatrix& b,
                           const Tolerances& tol = {});

struct CheckResult {
  std::string name;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SelftestSummary {
  long passed = 0;
  long failed = 0;
  std::vector<CheckResult> violations;
};

// Runs the invariant suites: golden facts for the fixed catalog pairs,
// exponential agreement against the series oracle, log-splitting
// invariants, the linear-spectrum oracle, every generator family, and the
// semisimple-nilpotent decomposition. seeds controls how many seeds each
// randomized suite consumes. inject_fault collapses the entrywise
// tolerance to zero; a healthy build must then report failures.
SelftestSummary run_selftest(int seeds, int tmax, const Tolerances& tol = {},
                             bool inject_fault = false);

}  // namespace commexp
