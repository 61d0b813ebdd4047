#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "woe/dataset.hpp"

namespace woe {

// Fixed-coefficient logistic model for surgical lesion.
// Y = intercept + a2 * A2 + ln_pulse * ln(pulse) + distension * Distension
struct LogisticModel {
  double intercept = 7.86;
  double coef_a2 = -1.73;
  double coef_ln_pulse = -1.54;
  double coef_distension = -0.498;
};

struct LogisticScore {
  double y = 0.0;
  double p = 0.5;
};

// Throws ValidationError for pulse <= 0, a2 outside {0,1} or distension outside 0..3.
LogisticScore logistic_score(int a2, double pulse, int distension, const LogisticModel& model = {});

// Where the model's three inputs live in a schema.
struct LogisticBinding {
  std::string a2_attribute = "abdomen";
  std::vector<std::string> a2_values = {"firm_feces_large_intestine", "distended_large_intestine"};
  std::string pulse_attribute = "pulse";
  std::string distension_attribute = "abdominal_distension";
  std::vector<std::string> distension_levels = {"none", "slight", "moderate", "severe"};  // 0..3

  // Throws ValidationError when the schema lacks an attribute of the right kind.
  void check_against(const Schema& schema) const;
};

using Predictor = std::function<std::optional<double>(const Case&)>;

// nullopt when any of the three inputs is missing.
Predictor logistic_predictor(const Schema& schema, const LogisticBinding& binding = {},
                             const LogisticModel& model = {});

struct Metrics {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  std::int64_t n_unscored = 0;
  // Absent when the denominator is zero.
  std::optional<double> npv;
  std::optional<double> ppv;
  std::optional<double> sensitivity;
  std::optional<double> specificity;

  static Metrics from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn,
                             std::int64_t n_unscored = 0);
};

// Positive iff p >= threshold. Cases without a label or a score count as
// unscored. Throws EstimationError when nothing could be scored.
Metrics evaluate(const Predictor& predictor, const Dataset& dataset, double threshold = 0.5,
                 Hypothesis hypothesis = Hypothesis::surgical_lesion);

}  // namespace woe
