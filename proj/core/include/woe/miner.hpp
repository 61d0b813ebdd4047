#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "woe/dataset.hpp"
#include "woe/knowledge_base.hpp"
#include "woe/symptom.hpp"

namespace woe {

struct Binarization {
  std::vector<SymptomDescriptor> descriptors;  // canonical order
  std::vector<std::string> warnings;           // fuzzy labels left out
};

// One descriptor per categorical value and per fuzzy label (alpha fixed by
// optimal_alpha), skipping zero-support descriptors. Throws
// EstimationError("degenerate hypothesis ...") unless both hypothesis classes
// occur among labelled cases.
Binarization binarize_symptoms(const Dataset& dataset, Hypothesis hypothesis,
                               const MiningConfig& config = {});

// Groups of at most config.max_size descriptors on distinct attributes whose
// support (labelled cases where every descriptor holds) is at least
// config.min_support, in canonical order. Levelwise apriori: a group is only
// counted once all its sub-groups passed.
std::vector<SymptomGroup> enumerate_candidates(const Dataset& dataset, Hypothesis hypothesis,
                                               std::span<const SymptomDescriptor> descriptors,
                                               const MiningConfig& config = {});

// Table, estimate and significance for every candidate. The candidate list is
// split into `shards` contiguous slices evaluated on separate threads; the
// result is sorted by group and independent of `shards`.
std::vector<MinedRule> evaluate_candidates(const Dataset& dataset, Hypothesis hypothesis,
                                           std::span<const SymptomGroup> candidates,
                                           const MiningConfig& config = {}, std::size_t shards = 1);

struct MiningRun {
  KnowledgeBase kb;
  std::vector<std::string> warnings;
  std::size_t descriptor_count = 0;
  std::size_t candidate_count = 0;
};

// binarize -> enumerate -> evaluate, keeping significant rules only. The
// prior comes from the labelled prevalence unless config.prior_prevalence is set.
MiningRun mine(const Dataset& dataset, Hypothesis hypothesis, const MiningConfig& config = {},
               std::size_t shards = 1);

}  // namespace woe
