#include "woe/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "woe/error.hpp"

namespace woe {

WeightEstimate estimate_weight(const ContingencyTable& t, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("smoothing must be a finite value >= 0");
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) throw ValidationError("negative contingency count");
  bool defined = s > 0.0 ? t.total() > 0 : (t.a > 0 && t.c > 0);
  if (!defined) {
    throw EstimationError("undefined weight for table a=" + std::to_string(t.a) + " b=" + std::to_string(t.b) +
                          " c=" + std::to_string(t.c) + " d=" + std::to_string(t.d));
  }
  const double a = static_cast<double>(t.a) + s;
  const double h = static_cast<double>(t.a + t.b) + 2.0 * s;
  const double c = static_cast<double>(t.c) + s;
  const double nh = static_cast<double>(t.c + t.d) + 2.0 * s;

  WeightEstimate est;
  est.smoothing = s;
  // Difference of logs: swapping the hypothesis rows negates w bit for bit.
  est.w = std::log(a / h) - std::log(c / nh);
  double var = (1.0 / a - 1.0 / h) + (1.0 / c - 1.0 / nh);
  est.se = std::sqrt(std::max(var, 0.0));
  // se is zero only when b = d = 0 without smoothing, where w = ln 1 = 0 too.
  est.z = est.se > 0.0 ? est.w / est.se : 0.0;
  return est;
}

bool is_significant(const WeightEstimate& estimate, double z_crit) {
  if (!(z_crit > 0.0)) throw ValidationError("z_crit must be > 0");
  return std::abs(estimate.z) >= z_crit;
}

PriorOdds prior_log_odds(double prevalence) {
  if (!(prevalence > 0.0 && prevalence < 1.0)) {
    throw ValidationError("prevalence must lie strictly inside (0,1), got " + std::to_string(prevalence));
  }
  return {prevalence, std::log(prevalence / (1.0 - prevalence))};
}

double sum_weights(std::span<const double> weights) {
  std::vector<double> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double w : sorted) sum += w;
  return sum;
}

double combine(const PriorOdds& prior, std::span<const double> weights) {
  return prior.log_odds + sum_weights(weights);
}

std::string_view to_string(ProbabilityMode mode) {
  return mode == ProbabilityMode::canonical ? "canonical" : "compat-odds";
}

double to_probability(double log_odds, ProbabilityMode mode) {
  if (mode == ProbabilityMode::compat_odds) {
    if (!(log_odds > 0.0)) {
      throw EstimationError("compat-odds probability needs a positive posterior, got " + std::to_string(log_odds));
    }
    return log_odds / (1.0 + log_odds);
  }
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  double e = std::exp(log_odds);
  return e / (1.0 + e);
}

}  // namespace woe
