#include "woe/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "woe/error.hpp"

namespace woe {

LogisticScore logistic_score(int a2, double pulse, int distension, const LogisticModel& model) {
  if (!(pulse > 0.0) || !std::isfinite(pulse)) throw ValidationError("pulse must be > 0");
  if (a2 != 0 && a2 != 1) throw ValidationError("A2 must be 0 or 1");
  if (distension < 0 || distension > 3) throw ValidationError("distension must be in 0..3");
  LogisticScore s;
  s.y = model.intercept + model.coef_a2 * a2 + model.coef_ln_pulse * std::log(pulse) +
        model.coef_distension * distension;
  s.p = std::exp(s.y) / (1.0 + std::exp(s.y));
  return s;
}

void LogisticBinding::check_against(const Schema& schema) const {
  auto require_kind = [&](const std::string& name, AttributeKind kind) -> const Attribute& {
    const Attribute* attr = schema.find(name);
    if (attr == nullptr || attr->kind != kind) {
      throw ValidationError("logistic baseline needs " +
                            std::string(kind == AttributeKind::categorical ? "categorical" : "continuous") +
                            " attribute '" + name + "'");
    }
    return *attr;
  };
  const Attribute& a2 = require_kind(a2_attribute, AttributeKind::categorical);
  for (const auto& v : a2_values) {
    if (!a2.has_value(v)) throw ValidationError("'" + v + "' is not a value of '" + a2_attribute + "'");
  }
  require_kind(pulse_attribute, AttributeKind::continuous);
  const Attribute& dist = require_kind(distension_attribute, AttributeKind::categorical);
  if (distension_levels.size() != 4) throw ValidationError("distension coding needs exactly 4 levels (0..3)");
  for (const auto& v : distension_levels) {
    if (!dist.has_value(v)) throw ValidationError("'" + v + "' is not a value of '" + distension_attribute + "'");
  }
}

Predictor logistic_predictor(const Schema& schema, const LogisticBinding& binding, const LogisticModel& model) {
  binding.check_against(schema);
  std::size_t a2_index = schema.require(binding.a2_attribute);
  std::size_t pulse_index = schema.require(binding.pulse_attribute);
  std::size_t dist_index = schema.require(binding.distension_attribute);
  return [=](const Case& c) -> std::optional<double> {
    const auto* a2 = std::get_if<std::string>(&c.values.at(a2_index));
    const auto* pulse = std::get_if<double>(&c.values.at(pulse_index));
    const auto* dist = std::get_if<std::string>(&c.values.at(dist_index));
    if (a2 == nullptr || pulse == nullptr || dist == nullptr || !(*pulse > 0.0)) return std::nullopt;
    auto level = std::find(binding.distension_levels.begin(), binding.distension_levels.end(), *dist);
    if (level == binding.distension_levels.end()) return std::nullopt;
    bool a2_present = std::find(binding.a2_values.begin(), binding.a2_values.end(), *a2) != binding.a2_values.end();
    return logistic_score(a2_present ? 1 : 0, *pulse,
                          static_cast<int>(level - binding.distension_levels.begin()), model)
        .p;
  };
}

Metrics Metrics::from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn,
                             std::int64_t n_unscored) {
  auto ratio = [](std::int64_t num, std::int64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.tn = tn;
  m.fn = fn;
  m.n_unscored = n_unscored;
  m.npv = ratio(tn, tn + fn);
  m.ppv = ratio(tp, tp + fp);
  m.sensitivity = ratio(tp, tp + fn);
  m.specificity = ratio(tn, tn + fp);
  return m;
}

Metrics evaluate(const Predictor& predictor, const Dataset& dataset, double threshold, Hypothesis hypothesis) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ValidationError("threshold must lie in [0,1]");
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0, unscored = 0;
  for (const Case& c : dataset.cases()) {
    auto label = c.label(hypothesis);
    std::optional<double> p = label ? predictor(c) : std::nullopt;
    if (!p) {
      ++unscored;
      continue;
    }
    bool predicted = *p >= threshold;
    if (predicted) ++(*label ? tp : fp);
    else ++(*label ? fn : tn);
  }
  if (tp + fp + tn + fn == 0) throw EstimationError("no scorable cases to evaluate");
  return Metrics::from_counts(tp, fp, tn, fn, unscored);
}

}  // namespace woe
