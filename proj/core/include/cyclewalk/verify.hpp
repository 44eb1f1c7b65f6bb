#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclewalk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst observed deviation / distance
  double threshold = 0.0;
  std::string details;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Run only criteria whose name contains one of these substrings (all when
  // empty).
  std::vector<std::string> only;
  std::uint64_t seed = 20240817;
};

// The ten release checks, in order.  Each is self-contained and deterministic
// for a fixed seed.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

}  // namespace cyclewalk
