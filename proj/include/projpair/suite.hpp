#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// Machine-checkable invariant battery run against a single pair: every
// named residual with its bound, suitable for diff-stable JSON reports.

struct CheckItem {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass = true;
  nlohmann::json to_json() const;
};

CheckReport run_invariant_suite(const ProjectionPair& pair, int trials,
                                std::uint64_t seed, const Tol& tol = {});

}  // namespace projpair
