#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace woe {

// 2x2 counts for (event, hypothesis) over the cases complete for the event's
// attributes and labelled for the hypothesis.
struct ContingencyTable {
  std::int64_t a = 0;  // E and H
  std::int64_t b = 0;  // not E and H
  std::int64_t c = 0;  // E and not H
  std::int64_t d = 0;  // not E and not H
  std::int64_t n_excluded = 0;

  std::int64_t total() const { return a + b + c + d; }
  std::int64_t support() const { return a + c; }

  bool operator==(const ContingencyTable&) const = default;
};

// Weight of evidence in natural-log units with its asymptotic standard error.
struct WeightEstimate {
  double w = 0.0;
  double se = 0.0;
  double z = 0.0;
  double smoothing = 0.0;

  bool operator==(const WeightEstimate&) const = default;
};

inline constexpr double kDefaultSmoothing = 0.5;
inline constexpr double kDefaultZCrit = 1.96;

// w  = ln[ ((a+s)/(a+b+2s)) / ((c+s)/(c+d+2s)) ]
// se = sqrt( 1/(a+s) - 1/(a+b+2s) + 1/(c+s) - 1/(c+d+2s) )
// Throws EstimationError("undefined weight") when s == 0 and a or c is zero,
// or when s > 0 and the table is empty.
WeightEstimate estimate_weight(const ContingencyTable& table, double smoothing = kDefaultSmoothing);

// |z| >= z_crit. Throws ValidationError for z_crit <= 0.
bool is_significant(const WeightEstimate& estimate, double z_crit = kDefaultZCrit);

struct PriorOdds {
  double prevalence = 0.5;
  double log_odds = 0.0;

  bool operator==(const PriorOdds&) const = default;
};

// Throws ValidationError unless 0 < prevalence < 1.
PriorOdds prior_log_odds(double prevalence);

// Sum of weights in canonical (ascending) order, so any permutation of the
// input gives the same bits.
double sum_weights(std::span<const double> weights);

// prior.log_odds + sum_weights(weights).
double combine(const PriorOdds& prior, std::span<const double> weights);

enum class ProbabilityMode {
  canonical,    // p = e^L / (1 + e^L)
  compat_odds,  // p = L / (1 + L), reading the posterior as plain odds; L > 0 only
};

std::string_view to_string(ProbabilityMode mode);

// Throws EstimationError for compat_odds with log_odds <= 0.
double to_probability(double log_odds, ProbabilityMode mode = ProbabilityMode::canonical);

}  // namespace woe
