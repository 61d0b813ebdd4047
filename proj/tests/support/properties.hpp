#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace woe::testing {

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && instances > 0; }
};

// Each check draws `instances` random inputs from a generator seeded with `seed`.
PropertyResult check_alpha_cut_antimonotone(std::size_t instances, std::uint64_t seed);
PropertyResult check_yager_non_increasing(std::size_t instances, std::uint64_t seed);
PropertyResult check_weight_antisymmetry(std::size_t instances, std::uint64_t seed);
// Balanced classes (a+b = c+d), where shrinkage is a theorem.
PropertyResult check_smoothing_shrinkage(std::size_t instances, std::uint64_t seed);
PropertyResult check_combine_permutation(std::size_t instances, std::uint64_t seed);
PropertyResult check_selection_disjoint(std::size_t instances, std::uint64_t seed);
PropertyResult check_metrics_conservation(std::size_t instances, std::uint64_t seed);
PropertyResult check_threshold_monotone(std::size_t instances, std::uint64_t seed);
PropertyResult check_logistic_decreasing(std::size_t instances, std::uint64_t seed);

// Runs the first seven checks; the two baseline checks are called on their own.
std::vector<PropertyResult> run_all_properties(std::size_t instances, std::uint64_t seed);

}  // namespace woe::testing
