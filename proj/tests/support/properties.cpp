#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "woe/baseline.hpp"
#include "woe/evidence.hpp"
#include "woe/fuzzy_event.hpp"
#include "woe/inference.hpp"

namespace woe::testing {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Grades mix two-decimal values (ties with grid levels) and arbitrary reals.
FuzzyEvent random_event(Rng& rng) {
  std::vector<GradedCase> grades;
  auto n = uniform_int(rng, 0, 30);
  for (std::int64_t i = 0; i < n; ++i) {
    double g = uniform_int(rng, 0, 1) ? static_cast<double>(uniform_int(rng, 0, 100)) / 100.0 : uniform(rng, 0.0, 1.0);
    grades.push_back({"x" + std::to_string(i), g});
  }
  return FuzzyEvent("attr", "label", std::move(grades));
}

double random_alpha(Rng& rng) {
  return uniform_int(rng, 0, 1) ? static_cast<double>(uniform_int(rng, 1, 100)) / 100.0
                                : std::max(1e-9, uniform(rng, 0.0, 1.0));
}

struct Recorder {
  PropertyResult result;
  explicit Recorder(std::string name) { result.name = std::move(name); }
  void check(bool ok, const std::string& detail) {
    ++result.instances;
    if (ok) return;
    if (result.failures++ == 0) result.first_failure = detail;
  }
};

std::string table_text(const ContingencyTable& t) {
  std::ostringstream s;
  s << "a=" << t.a << " b=" << t.b << " c=" << t.c << " d=" << t.d;
  return s.str();
}

}  // namespace

PropertyResult check_alpha_cut_antimonotone(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("alpha-cut anti-monotonicity");
  for (std::size_t i = 0; i < instances; ++i) {
    FuzzyEvent e = random_event(rng);
    double a1 = random_alpha(rng), a2 = random_alpha(rng);
    if (a1 > a2) std::swap(a1, a2);
    auto lo = alpha_cut(e, a1);
    auto hi = alpha_cut(e, a2);
    bool subset = std::includes(lo.begin(), lo.end(), hi.begin(), hi.end());
    rec.check(subset, "cut(" + std::to_string(a2) + ") not within cut(" + std::to_string(a1) + ")");
  }
  return rec.result;
}

PropertyResult check_yager_non_increasing(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("Yager cut probabilities non-increasing");
  for (std::size_t i = 0; i < instances; ++i) {
    FuzzyEvent e = random_event(rng);
    std::set<double> levels;
    auto k = uniform_int(rng, 1, 12);
    for (std::int64_t j = 0; j < k; ++j) levels.insert(random_alpha(rng));
    std::vector<double> grid(levels.begin(), levels.end());

    ProbabilityMap p;
    double total = 0.0;
    std::vector<double> raw;
    for (std::size_t j = 0; j < e.size(); ++j) raw.push_back(uniform(rng, 0.0, 1.0) + 1e-3);
    for (double r : raw) total += r;
    for (std::size_t j = 0; j < e.size(); ++j) p[e.grades()[j].case_id] = raw[j] / total;
    if (e.size() == 0) {
      rec.check(true, "");
      continue;
    }
    auto probs = yager_probability(e, grid, p);
    bool ok = true;
    for (std::size_t j = 1; j < probs.size(); ++j) ok = ok && probs[j].probability <= probs[j - 1].probability;
    rec.check(ok, "P(A_alpha) increased along the grid");
  }
  return rec.result;
}

PropertyResult check_weight_antisymmetry(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("weight antisymmetry");
  for (std::size_t i = 0; i < instances; ++i) {
    ContingencyTable t{uniform_int(rng, 0, 60), uniform_int(rng, 0, 60), uniform_int(rng, 0, 60),
                       uniform_int(rng, 0, 60), 0};
    double s = uniform_int(rng, 0, 3) == 0 ? 0.0 : uniform(rng, 0.01, 2.0);
    if (s == 0.0 && (t.a == 0 || t.c == 0)) t.a += 1, t.c += 1;
    if (t.total() == 0) t.a = 1;
    ContingencyTable swapped{t.c, t.d, t.a, t.b, t.n_excluded};
    WeightEstimate w = estimate_weight(t, s);
    WeightEstimate v = estimate_weight(swapped, s);
    rec.check(v.w == -w.w && v.se == w.se, table_text(t) + ": swapped weight is not the exact negation");
  }
  return rec.result;
}

PropertyResult check_smoothing_shrinkage(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("smoothing shrinkage (balanced classes)");
  for (std::size_t i = 0; i < instances; ++i) {
    std::int64_t n = uniform_int(rng, 1, 200);
    std::int64_t a = uniform_int(rng, 1, n), c = uniform_int(rng, 1, n);
    ContingencyTable t{a, n - a, c, n - c, 0};
    double s = uniform(rng, 1e-3, 3.0);
    double w0 = estimate_weight(t, 0.0).w;
    double ws = estimate_weight(t, s).w;
    rec.check(std::abs(ws) <= std::abs(w0) + 1e-12, table_text(t) + " s=" + std::to_string(s));
  }
  return rec.result;
}

PropertyResult check_combine_permutation(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("combine permutation invariance");
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<double> weights;
    auto k = uniform_int(rng, 0, 15);
    for (std::int64_t j = 0; j < k; ++j) weights.push_back(uniform(rng, -3.0, 3.0));
    PriorOdds prior = prior_log_odds(uniform(rng, 0.01, 0.99));
    double base = combine(prior, weights);
    std::shuffle(weights.begin(), weights.end(), rng);
    double shuffled = combine(prior, weights);
    rec.check(std::abs(base - shuffled) <= 1e-12, "permuted weights changed the posterior");
  }
  return rec.result;
}

PropertyResult check_selection_disjoint(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("disjointness of every selection");
  const std::vector<std::string> attrs = {"p", "q", "r", "s", "t", "u"};
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<MinedRule> rules;
    std::set<SymptomGroup> seen;
    auto k = uniform_int(rng, 0, 10);
    for (std::int64_t j = 0; j < k; ++j) {
      std::vector<std::string> pool = attrs;
      std::shuffle(pool.begin(), pool.end(), rng);
      auto size = uniform_int(rng, 1, 3);
      std::vector<SymptomDescriptor> ds;
      for (std::int64_t m = 0; m < size; ++m) {
        ds.push_back(SymptomDescriptor::categorical(pool[m], "v" + std::to_string(uniform_int(rng, 0, 1))));
      }
      SymptomGroup g(std::move(ds));
      if (!seen.insert(g).second) continue;
      MinedRule r;
      r.group = std::move(g);
      r.estimate.w = uniform(rng, -2.0, 2.0);
      r.estimate.se = uniform(rng, 0.05, 1.0);
      rules.push_back(std::move(r));
    }
    ScoreWeights sw{uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0)};
    auto selected = select_disjoint(rules, sw);
    bool ok = true;
    for (std::size_t x = 0; x < selected.size(); ++x) {
      for (std::size_t y = x + 1; y < selected.size(); ++y) {
        ok = ok && !selected[x].group.shares_attribute(selected[y].group);
      }
    }
    // Greedy maximality: every rule left out conflicts with a selected one.
    for (const auto& r : rules) {
      bool chosen = std::any_of(selected.begin(), selected.end(), [&](const MinedRule& s) { return s.group == r.group; });
      bool blocked = std::any_of(selected.begin(), selected.end(),
                                 [&](const MinedRule& s) { return s.group.shares_attribute(r.group); });
      ok = ok && (chosen || blocked);
    }
    rec.check(ok, "selected rules overlap or a free rule was skipped");
  }
  return rec.result;
}

PropertyResult check_metrics_conservation(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("metrics count conservation");
  Attribute attr;
  attr.name = "x";
  attr.kind = AttributeKind::continuous;
  Schema schema({attr});
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<Case> cases;
    auto n = uniform_int(rng, 1, 40);
    for (std::int64_t j = 0; j < n; ++j) {
      Case c;
      c.id = std::to_string(j);
      c.values.push_back(uniform_int(rng, 0, 4) == 0 ? Cell{Missing{}} : Cell{uniform(rng, 0.0, 1.0)});
      if (uniform_int(rng, 0, 5) != 0) c.outcomes.surgical_lesion = uniform_int(rng, 0, 1) == 1;
      cases.push_back(std::move(c));
    }
    Dataset data(schema, std::move(cases));
    Predictor predictor = [](const Case& c) -> std::optional<double> {
      if (const auto* x = std::get_if<double>(&c.values[0])) return *x;
      return std::nullopt;
    };
    double threshold = uniform(rng, 0.0, 1.0);
    Metrics m;
    try {
      m = evaluate(predictor, data, threshold);
    } catch (const std::exception&) {
      bool none_scorable = std::none_of(data.cases().begin(), data.cases().end(), [&](const Case& c) {
        return c.outcomes.surgical_lesion.has_value() && predictor(c).has_value();
      });
      rec.check(none_scorable, "evaluate refused a dataset with scorable cases");
      continue;
    }
    bool ok = m.tp + m.fp + m.tn + m.fn + m.n_unscored == static_cast<std::int64_t>(data.size());
    Metrics again = Metrics::from_counts(m.tp, m.fp, m.tn, m.fn, m.n_unscored);
    ok = ok && again.npv == m.npv && again.ppv == m.ppv && again.sensitivity == m.sensitivity &&
         again.specificity == m.specificity;
    for (const auto& rate : {m.npv, m.ppv, m.sensitivity, m.specificity}) {
      ok = ok && (!rate || (*rate >= 0.0 && *rate <= 1.0));
    }
    rec.check(ok, "counts do not add up to the dataset size");
  }
  return rec.result;
}

PropertyResult check_threshold_monotone(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("threshold monotonicity of tp and fp");
  Attribute attr;
  attr.name = "x";
  attr.kind = AttributeKind::continuous;
  Schema schema({attr});
  Predictor predictor = [](const Case& c) -> std::optional<double> { return std::get<double>(c.values[0]); };
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<Case> cases;
    auto n = uniform_int(rng, 1, 40);
    for (std::int64_t j = 0; j < n; ++j) {
      Case c;
      c.id = std::to_string(j);
      c.values.push_back(Cell{static_cast<double>(uniform_int(rng, 0, 20)) / 20.0});
      c.outcomes.surgical_lesion = uniform_int(rng, 0, 1) == 1;
      cases.push_back(std::move(c));
    }
    Dataset data(schema, std::move(cases));
    double t1 = static_cast<double>(uniform_int(rng, 0, 20)) / 20.0;
    double t2 = std::min(1.0, t1 + uniform(rng, 0.0, 0.5));
    Metrics lo = evaluate(predictor, data, t1);
    Metrics hi = evaluate(predictor, data, t2);
    rec.check(hi.tp <= lo.tp && hi.fp <= lo.fp, "raising the threshold added positives");
  }
  return rec.result;
}

PropertyResult check_logistic_decreasing(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("logistic probability decreasing in each input");
  for (std::size_t i = 0; i < instances; ++i) {
    int a2 = static_cast<int>(uniform_int(rng, 0, 1));
    int dist = static_cast<int>(uniform_int(rng, 0, 3));
    double pulse = uniform(rng, 20.0, 250.0);
    // Wide inputs saturate p in double precision, so compare Y and, where p
    // still resolves the change, p itself.
    LogisticScore base = logistic_score(a2, pulse, dist);
    LogisticScore more = logistic_score(a2, pulse * (1.0 + uniform(rng, 0.01, 1.0)), dist);
    bool ok = more.y < base.y && more.p <= base.p;
    if (dist < 3) {
      LogisticScore d = logistic_score(a2, pulse, dist + 1);
      ok = ok && d.y < base.y && d.p < base.p;
    }
    if (a2 == 0) {
      LogisticScore a = logistic_score(1, pulse, dist);
      ok = ok && a.y < base.y && a.p < base.p;
    }
    rec.check(ok, "pulse " + std::to_string(pulse));
  }
  return rec.result;
}

std::vector<PropertyResult> run_all_properties(std::size_t instances, std::uint64_t seed) {
  return {check_alpha_cut_antimonotone(instances, seed),     check_yager_non_increasing(instances, seed + 1),
          check_weight_antisymmetry(instances, seed + 2),    check_smoothing_shrinkage(instances, seed + 3),
          check_combine_permutation(instances, seed + 4),    check_selection_disjoint(instances, seed + 5),
          check_metrics_conservation(instances, seed + 6)};
}

}  // namespace woe::testing
