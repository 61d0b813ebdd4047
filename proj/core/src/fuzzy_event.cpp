#include "woe/fuzzy_event.hpp"

#include <cmath>
#include <unordered_set>

#include "woe/error.hpp"

namespace woe {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0,1]");
}

void require_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_alpha(grid[i]);
    if (i > 0 && !(grid[i - 1] < grid[i])) throw ValidationError("alpha grid must be strictly increasing");
  }
}

// Probabilities of the event's cases, in event order.
std::vector<double> case_weights(const FuzzyEvent& event, const ProbabilityMap& probabilities) {
  std::vector<double> p;
  p.reserve(event.size());
  double total = 0.0;
  for (const auto& g : event.grades()) {
    auto it = probabilities.find(g.case_id);
    if (it == probabilities.end()) throw ValidationError("no probability for case '" + g.case_id + "'");
    if (!(it->second >= 0.0)) throw ValidationError("negative probability for case '" + g.case_id + "'");
    p.push_back(it->second);
    total += it->second;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("case probabilities sum to " + std::to_string(total) + ", not 1");
  }
  return p;
}

struct LabelledGrade {
  double grade;
  bool positive;
};

std::vector<LabelledGrade> labelled(const FuzzyEvent& event, const LabelMap& labels) {
  std::vector<LabelledGrade> out;
  for (const auto& g : event.grades()) {
    auto it = labels.find(g.case_id);
    if (it != labels.end()) out.push_back({g.grade, it->second});
  }
  return out;
}

ContingencyTable table_at(std::span<const LabelledGrade> cases, double alpha) {
  ContingencyTable t;
  for (const auto& lg : cases) {
    bool in = lg.grade >= alpha;
    if (lg.positive) ++(in ? t.a : t.b);
    else ++(in ? t.c : t.d);
  }
  return t;
}

bool admissible(const ContingencyTable& t) {
  std::int64_t in = t.a + t.c;
  return in > 0 && in < t.total();
}

}  // namespace

FuzzyEvent::FuzzyEvent(std::string attribute, std::string label, std::vector<GradedCase> grades)
    : attribute_(std::move(attribute)), label_(std::move(label)), grades_(std::move(grades)) {
  std::unordered_set<std::string_view> ids;
  for (const auto& g : grades_) {
    if (!(g.grade >= 0.0 && g.grade <= 1.0)) {
      throw ValidationError("grade of case '" + g.case_id + "' outside [0,1]");
    }
    if (!ids.insert(g.case_id).second) throw ValidationError("case '" + g.case_id + "' graded twice");
  }
}

FuzzyEvent FuzzyEvent::from_dataset(const Dataset& dataset, std::string_view attribute, std::string_view label) {
  std::size_t index = dataset.schema().require(attribute);
  const Attribute& attr = dataset.schema().at(index);
  const FuzzyLabel* fl = attr.find_label(label);
  if (fl == nullptr) {
    throw ValidationError("attribute '" + attr.name + "' has no fuzzy label '" + std::string(label) + "'");
  }
  std::vector<GradedCase> grades;
  for (const Case& c : dataset.cases()) {
    if (const auto* x = std::get_if<double>(&c.values[index])) grades.push_back({c.id, fl->mf(*x)});
  }
  return FuzzyEvent(attr.name, fl->label, std::move(grades));
}

std::set<std::string> alpha_cut(const FuzzyEvent& event, double alpha) {
  require_alpha(alpha);
  std::set<std::string> out;
  for (const auto& g : event.grades()) {
    if (g.grade >= alpha) out.insert(g.case_id);
  }
  return out;
}

std::vector<double> alpha_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ValidationError("alpha step must lie in (0,1]");
  std::vector<double> grid;
  double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) < 1e-9) {
    auto count = static_cast<long long>(n);
    for (long long k = 1; k <= count; ++k) grid.push_back(static_cast<double>(k) / n);
  } else {
    for (long long k = 1; static_cast<double>(k) * step <= 1.0; ++k) grid.push_back(static_cast<double>(k) * step);
  }
  return grid;
}

ProbabilityMap uniform_probabilities(const FuzzyEvent& event) {
  ProbabilityMap out;
  if (event.size() == 0) return out;
  double p = 1.0 / static_cast<double>(event.size());
  for (const auto& g : event.grades()) out.emplace(g.case_id, p);
  return out;
}

double zadeh_probability(const FuzzyEvent& event, const ProbabilityMap& probabilities) {
  auto p = case_weights(event, probabilities);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += event.grades()[i].grade * p[i];
  return sum;
}

std::vector<CutProbability> yager_probability(const FuzzyEvent& event, std::span<const double> grid,
                                              const ProbabilityMap& probabilities) {
  require_grid(grid);
  auto p = case_weights(event, probabilities);
  std::vector<CutProbability> out;
  out.reserve(grid.size());
  for (double alpha : grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (event.grades()[i].grade >= alpha) sum += p[i];
    }
    out.push_back({alpha, sum});
  }
  return out;
}

ContingencyTable cut_table(const FuzzyEvent& event, const LabelMap& labels, double alpha) {
  require_alpha(alpha);
  return table_at(labelled(event, labels), alpha);
}

AlphaChoice optimal_alpha(const FuzzyEvent& event, const LabelMap& labels, std::span<const double> grid,
                          double smoothing) {
  require_grid(grid);
  auto cases = labelled(event, labels);
  bool any_pos = false, any_neg = false;
  for (const auto& lg : cases) (lg.positive ? any_pos : any_neg) = true;
  if (!any_pos || !any_neg) {
    throw EstimationError("degenerate fuzzy event " + event.attribute() + "~" + event.label() +
                          ": graded cases lack one hypothesis class");
  }
  std::optional<AlphaChoice> best;
  for (double alpha : grid) {
    ContingencyTable t = table_at(cases, alpha);
    if (!admissible(t)) continue;
    if (smoothing == 0.0 && (t.a == 0 || t.c == 0)) continue;
    WeightEstimate est = estimate_weight(t, smoothing);
    // Strictly larger only: equal bias keeps the smaller, more inclusive alpha.
    if (!best || std::abs(est.w) > std::abs(best->weight_at_alpha) + 1e-12) {
      best = AlphaChoice{alpha, est.w, static_cast<std::size_t>(t.a + t.c)};
    }
  }
  if (!best) {
    throw EstimationError("degenerate fuzzy event " + event.attribute() + "~" + event.label() +
                          ": every alpha cut is empty or universal");
  }
  return *best;
}

std::vector<AlphaProfileRow> alpha_profile(const FuzzyEvent& event, const LabelMap& labels,
                                           std::span<const double> grid, double smoothing) {
  require_grid(grid);
  auto cases = labelled(event, labels);
  std::vector<AlphaProfileRow> rows;
  rows.reserve(grid.size());
  auto n = static_cast<double>(event.size());
  for (double alpha : grid) {
    AlphaProfileRow row;
    row.alpha = alpha;
    for (const auto& g : event.grades()) {
      if (g.grade >= alpha) ++row.subset_size;
    }
    row.probability = n > 0 ? static_cast<double>(row.subset_size) / n : 0.0;
    ContingencyTable t = table_at(cases, alpha);
    if (admissible(t) && !(smoothing == 0.0 && (t.a == 0 || t.c == 0))) {
      row.weight = estimate_weight(t, smoothing).w;
    }
    rows.push_back(row);
  }
  return rows;
}

LabelMap labels_of(const Dataset& dataset, Hypothesis hypothesis) {
  LabelMap out;
  for (const Case& c : dataset.cases()) {
    if (auto label = c.label(hypothesis)) out.emplace(c.id, *label);
  }
  return out;
}

}  // namespace woe
