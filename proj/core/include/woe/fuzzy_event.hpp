#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "woe/dataset.hpp"
#include "woe/evidence.hpp"

namespace woe {

struct GradedCase {
  std::string case_id;
  double grade = 0.0;
};

using ProbabilityMap = std::map<std::string, double, std::less<>>;
using LabelMap = std::map<std::string, bool, std::less<>>;

// A linguistic symptom with a membership grade per observed case. Cases with
// a missing attribute value carry no grade.
class FuzzyEvent {
 public:
  // Throws ValidationError on grades outside [0,1] or repeated case ids.
  FuzzyEvent(std::string attribute, std::string label, std::vector<GradedCase> grades);

  // Grades every case where the attribute is observed.
  static FuzzyEvent from_dataset(const Dataset& dataset, std::string_view attribute,
                                 std::string_view label);

  const std::string& attribute() const { return attribute_; }
  const std::string& label() const { return label_; }
  std::span<const GradedCase> grades() const { return grades_; }
  std::size_t size() const { return grades_.size(); }

 private:
  std::string attribute_;
  std::string label_;
  std::vector<GradedCase> grades_;
};

// Chosen cut level for a fuzzy event.
struct AlphaChoice {
  double alpha = 1.0;
  double weight_at_alpha = 0.0;
  std::size_t subset_size = 0;
};

// {case : grade >= alpha}. Throws ValidationError unless alpha is in (0,1].
std::set<std::string> alpha_cut(const FuzzyEvent& event, double alpha);

// Grid k/n (k = 1..n) when 1/step is integral, otherwise step, 2*step, ... <= 1.
// Throws ValidationError unless step is in (0,1].
std::vector<double> alpha_grid(double step);

ProbabilityMap uniform_probabilities(const FuzzyEvent& event);

// Expected grade, sum of grade * p. The probabilities of the event's cases
// must sum to 1 within 1e-9 (ValidationError otherwise).
double zadeh_probability(const FuzzyEvent& event, const ProbabilityMap& probabilities);

struct CutProbability {
  double alpha = 0.0;
  double probability = 0.0;
};

// P(A_alpha) for each grid level. Grid must be strictly increasing in (0,1].
std::vector<CutProbability> yager_probability(const FuzzyEvent& event, std::span<const double> grid,
                                              const ProbabilityMap& probabilities);

// Contingency table of the alpha cut against the labels, over graded cases
// that have a label.
ContingencyTable cut_table(const FuzzyEvent& event, const LabelMap& labels, double alpha);

// Maximises |W(H:E_alpha)| over grid levels whose cut is neither empty nor
// every labelled graded case. Ties go to the smallest alpha. Throws
// EstimationError("degenerate fuzzy event") when no level qualifies, or when
// the labelled graded cases lack a positive or a negative.
AlphaChoice optimal_alpha(const FuzzyEvent& event, const LabelMap& labels, std::span<const double> grid,
                          double smoothing = kDefaultSmoothing);

// One row per grid level: cut probability under uniform weights, cut size,
// and the cut's weight when it is admissible.
struct AlphaProfileRow {
  double alpha = 0.0;
  double probability = 0.0;
  std::size_t subset_size = 0;
  std::optional<double> weight;
};

std::vector<AlphaProfileRow> alpha_profile(const FuzzyEvent& event, const LabelMap& labels,
                                           std::span<const double> grid,
                                           double smoothing = kDefaultSmoothing);

LabelMap labels_of(const Dataset& dataset, Hypothesis hypothesis);

}  // namespace woe
