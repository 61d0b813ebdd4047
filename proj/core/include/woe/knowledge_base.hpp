#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "woe/dataset.hpp"
#include "woe/evidence.hpp"
#include "woe/schema.hpp"
#include "woe/symptom.hpp"

namespace woe {

// Linear selection score weights: size, |w| and standard error.
struct ScoreWeights {
  double size = 1.0;
  double weight = 1.0;
  double error = 1.0;

  bool operator==(const ScoreWeights&) const = default;
};

struct MiningConfig {
  int max_size = 3;
  int min_support = 5;
  double z_crit = kDefaultZCrit;
  double smoothing = kDefaultSmoothing;
  double alpha_step = 0.01;
  ScoreWeights score_weights;
  // Overrides the training prevalence for the prior.
  std::optional<double> prior_prevalence;

  // Throws ValidationError for out-of-range fields.
  void validate() const;

  bool operator==(const MiningConfig&) const = default;
};

struct MinedRule {
  SymptomGroup group;
  WeightEstimate estimate;
  ContingencyTable table;
  bool significant = false;

  bool operator==(const MinedRule&) const = default;
};

struct KnowledgeBase {
  std::vector<MinedRule> rules;  // sorted by group, no duplicates
  PriorOdds prior;
  Hypothesis hypothesis = Hypothesis::surgical_lesion;
  MiningConfig config;
  Schema schema;
  std::string schema_digest;

  // Throws ValidationError on unsorted or duplicate rules, rules that do not
  // fit the schema, or a digest that does not match the schema.
  void validate() const;
  // Throws DigestMismatch unless schema has the digest recorded at mining time.
  void require_schema(const Schema& schema) const;

  bool operator==(const KnowledgeBase&) const = default;
};

// JSON document; doubles use the shortest representation that round-trips.
std::string save_kb(const KnowledgeBase& kb);
// Throws ParseError on malformed or incomplete text and ValidationError on
// invariant violations. Nothing is returned on failure.
KnowledgeBase load_kb(std::string_view text);

}  // namespace woe
