#pragma once

#include <span>
#include <string>
#include <vector>

#include "woe/dataset.hpp"
#include "woe/evidence.hpp"
#include "woe/knowledge_base.hpp"

namespace woe {

struct RuleMatch {
  std::vector<MinedRule> matched;
  // Attributes that kept a rule from matching because they are missing; sorted, unique.
  std::vector<std::string> unmatched_missing;
};

// A rule matches when every descriptor holds for the case. Throws
// DigestMismatch when `schema` is not the knowledge base's schema.
RuleMatch match_rules(const Schema& schema, const Case& c, const KnowledgeBase& kb);

// size*|group| + weight*|w| - error*se
double group_score(const MinedRule& rule, const ScoreWeights& weights = {});

// Greedy: highest score first (ties by group order), skipping rules that share
// an attribute with an already selected one. Returned in selection order.
std::vector<MinedRule> select_disjoint(std::span<const MinedRule> matched,
                                       const ScoreWeights& weights = {});

struct EvidenceRow {
  std::string group;
  double w = 0.0;
};

struct EvidenceReport {
  std::string case_id;
  std::string hypothesis;
  std::vector<EvidenceRow> rows;  // descending w
  double prior = 0.0;
  double weight_sum = 0.0;
  double posterior = 0.0;
  double probability = 0.5;
  ProbabilityMode mode = ProbabilityMode::canonical;
  std::vector<MinedRule> selected;
  std::vector<std::string> unmatched_missing;
};

struct InferenceOptions {
  ScoreWeights score_weights;
  ProbabilityMode mode = ProbabilityMode::canonical;
};

EvidenceReport infer(const Schema& schema, const Case& c, const KnowledgeBase& kb,
                     const InferenceOptions& options = {});

// Ledger: rows in favour of and against the hypothesis, then prior, weight
// sum, posterior and probability, three decimals each.
std::string render_report(const EvidenceReport& report);
std::string report_to_json(const EvidenceReport& report);

}  // namespace woe
