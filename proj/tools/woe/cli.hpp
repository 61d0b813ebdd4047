#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "woe/knowledge_base.hpp"

namespace woe::cli {

enum class Subcommand { mine, predict, evaluate, inspect };

// Effective configuration of one run. Flag names mirror the fields.
struct RunConfig {
  Subcommand subcommand = Subcommand::mine;
  std::string schema_path;
  std::string data_path;
  std::string kb_path;
  std::string case_path;
  std::string out_path;
  std::string predictions_path;
  std::string hypothesis = "surgical_lesion";
  MiningConfig mining;
  std::size_t shards = 1;
  std::optional<ScoreWeights> score_weights;
  bool compat_odds = false;
  bool json = false;
  double threshold = 0.5;
  std::optional<int> top;
  std::optional<std::string> fuzzy;  // ATTR:LABEL
};

int run_mine(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_predict(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_inspect(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
// Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace woe::cli
