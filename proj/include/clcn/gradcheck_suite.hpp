#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace clcn {

struct GradCheckResult {
  std::string name;
  double max_rel_err = 0.0;
  double tolerance = 1e-3;
  bool passed = false;
};

/// Finite-difference checks for every differentiable primitive (10 random
/// points each) plus the composed model pipeline, the cycle path, and the
/// full episode loss on a small synthetic instance.
std::vector<GradCheckResult> run_gradcheck_suite(std::uint64_t seed = 20240501);

}  // namespace clcn
