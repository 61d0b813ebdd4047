#include "woe/miner.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "case_bits.hpp"
#include "woe/error.hpp"
#include "woe/fuzzy_event.hpp"

namespace woe {
namespace {

using detail::CaseBits;
using IndexGroup = std::vector<std::uint32_t>;

// Per-descriptor case sets over one dataset, shared read-only by workers.
struct SymptomMatrix {
  std::size_t n = 0;
  CaseBits labelled;
  CaseBits positive;
  std::vector<CaseBits> holds;     // descriptor holds (implies observed and labelled)
  std::vector<CaseBits> observed;  // attribute observed and case labelled

  SymptomMatrix(const Dataset& dataset, Hypothesis hypothesis, std::span<const SymptomDescriptor> descriptors)
      : n(dataset.size()), labelled(n), positive(n) {
    const Schema& schema = dataset.schema();
    for (std::size_t i = 0; i < n; ++i) {
      if (auto label = dataset[i].label(hypothesis)) {
        labelled.set(i);
        if (*label) positive.set(i);
      }
    }
    holds.reserve(descriptors.size());
    observed.reserve(descriptors.size());
    for (const auto& d : descriptors) {
      d.check_against(schema);
      CaseBits h(n), o(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!labelled.test(i)) continue;
        auto v = d.evaluate(schema, dataset[i]);
        if (!v) continue;
        o.set(i);
        if (*v) h.set(i);
      }
      holds.push_back(std::move(h));
      observed.push_back(std::move(o));
    }
  }

  CaseBits holds_all(const IndexGroup& g) const {
    CaseBits bits = holds[g.front()];
    for (std::size_t k = 1; k < g.size(); ++k) bits &= holds[g[k]];
    return bits;
  }

  ContingencyTable table(const IndexGroup& g) const {
    CaseBits complete = observed[g.front()];
    for (std::size_t k = 1; k < g.size(); ++k) complete &= observed[g[k]];
    CaseBits in = holds_all(g);
    ContingencyTable t;
    std::int64_t n_complete = complete.count();
    std::int64_t n_pos = CaseBits::count_and(complete, positive);
    std::int64_t n_in = in.count();
    t.a = CaseBits::count_and(in, positive);
    t.c = n_in - t.a;
    t.b = n_pos - t.a;
    t.d = (n_complete - n_pos) - t.c;
    t.n_excluded = static_cast<std::int64_t>(n) - n_complete;
    return t;
  }
};

std::vector<SymptomDescriptor> canonical_descriptors(std::span<const SymptomDescriptor> descriptors) {
  std::vector<SymptomDescriptor> out(descriptors.begin(), descriptors.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SymptomGroup to_group(const IndexGroup& g, std::span<const SymptomDescriptor> descriptors) {
  std::vector<SymptomDescriptor> ds;
  ds.reserve(g.size());
  for (auto i : g) ds.push_back(descriptors[i]);
  return SymptomGroup(std::move(ds));
}

// Levelwise apriori over descriptor indices (ascending within a group).
std::vector<IndexGroup> frequent_groups(const SymptomMatrix& m, std::span<const SymptomDescriptor> descriptors,
                                        const MiningConfig& config) {
  std::vector<IndexGroup> all;
  std::vector<IndexGroup> level;
  for (std::uint32_t i = 0; i < descriptors.size(); ++i) {
    if (m.holds[i].count() >= config.min_support) level.push_back({i});
  }
  all.insert(all.end(), level.begin(), level.end());

  for (int size = 2; size <= config.max_size && level.size() > 1; ++size) {
    std::set<IndexGroup> previous(level.begin(), level.end());
    std::vector<IndexGroup> next;
    for (std::size_t x = 0; x < level.size(); ++x) {
      for (std::size_t y = x + 1; y < level.size(); ++y) {
        const IndexGroup& gx = level[x];
        const IndexGroup& gy = level[y];
        // Level is sorted, so groups sharing the prefix are contiguous.
        if (!std::equal(gx.begin(), gx.end() - 1, gy.begin(), gy.end() - 1)) break;
        std::uint32_t last = gy.back();
        const std::string& attr = descriptors[last].attribute();
        bool clash = std::any_of(gx.begin(), gx.end(),
                                 [&](std::uint32_t i) { return descriptors[i].attribute() == attr; });
        if (clash) continue;
        IndexGroup candidate = gx;
        candidate.push_back(last);
        bool subsets_frequent = true;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && subsets_frequent; ++drop) {
          IndexGroup sub;
          for (std::size_t k = 0; k < candidate.size(); ++k) {
            if (k != drop) sub.push_back(candidate[k]);
          }
          subsets_frequent = previous.count(sub) > 0;
        }
        if (!subsets_frequent) continue;
        if (m.holds_all(candidate).count() >= config.min_support) next.push_back(std::move(candidate));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

void count_classes(const Dataset& dataset, Hypothesis hypothesis, std::int64_t& pos, std::int64_t& neg) {
  pos = neg = 0;
  for (const Case& c : dataset.cases()) {
    if (auto label = c.label(hypothesis)) ++(*label ? pos : neg);
  }
}

}  // namespace

Binarization binarize_symptoms(const Dataset& dataset, Hypothesis hypothesis, const MiningConfig& config) {
  config.validate();
  std::int64_t pos = 0, neg = 0;
  count_classes(dataset, hypothesis, pos, neg);
  if (pos == 0 || neg == 0) {
    throw EstimationError("degenerate hypothesis: " + std::string(to_string(hypothesis)) + " has " +
                          std::to_string(pos) + " positive and " + std::to_string(neg) + " negative labelled cases");
  }

  const Schema& schema = dataset.schema();
  const auto grid = alpha_grid(config.alpha_step);
  const LabelMap labels = labels_of(dataset, hypothesis);
  Binarization out;
  for (std::size_t index = 0; index < schema.size(); ++index) {
    const Attribute& attr = schema.at(index);
    if (attr.kind == AttributeKind::categorical) {
      std::map<std::string, std::int64_t, std::less<>> support;
      for (const Case& c : dataset.cases()) {
        if (!c.label(hypothesis)) continue;
        if (const auto* s = std::get_if<std::string>(&c.values[index])) ++support[*s];
      }
      for (const auto& value : attr.values) {
        auto it = support.find(value);
        if (it != support.end() && it->second > 0) {
          out.descriptors.push_back(SymptomDescriptor::categorical(attr.name, value));
        }
      }
      continue;
    }
    for (const auto& fl : attr.fuzzy) {
      FuzzyEvent event = FuzzyEvent::from_dataset(dataset, attr.name, fl.label);
      try {
        AlphaChoice choice = optimal_alpha(event, labels, grid, config.smoothing);
        out.descriptors.push_back(SymptomDescriptor::fuzzy(attr.name, fl.label, choice.alpha));
      } catch (const EstimationError& e) {
        out.warnings.push_back(attr.name + "~" + fl.label + " omitted: " + e.what());
      }
    }
  }
  std::sort(out.descriptors.begin(), out.descriptors.end());
  return out;
}

std::vector<SymptomGroup> enumerate_candidates(const Dataset& dataset, Hypothesis hypothesis,
                                               std::span<const SymptomDescriptor> descriptors,
                                               const MiningConfig& config) {
  config.validate();
  auto canonical = canonical_descriptors(descriptors);
  SymptomMatrix matrix(dataset, hypothesis, canonical);
  std::vector<SymptomGroup> out;
  for (const auto& g : frequent_groups(matrix, canonical, config)) out.push_back(to_group(g, canonical));
  return out;
}

std::vector<MinedRule> evaluate_candidates(const Dataset& dataset, Hypothesis hypothesis,
                                           std::span<const SymptomGroup> candidates, const MiningConfig& config,
                                           std::size_t shards) {
  config.validate();
  if (shards == 0) throw ValidationError("shard count must be >= 1");

  std::vector<SymptomDescriptor> pool;
  for (const auto& g : candidates) pool.insert(pool.end(), g.descriptors().begin(), g.descriptors().end());
  pool = canonical_descriptors(pool);
  SymptomMatrix matrix(dataset, hypothesis, pool);

  std::vector<IndexGroup> indexed;
  indexed.reserve(candidates.size());
  for (const auto& g : candidates) {
    IndexGroup ig;
    for (const auto& d : g.descriptors()) {
      ig.push_back(static_cast<std::uint32_t>(std::lower_bound(pool.begin(), pool.end(), d) - pool.begin()));
    }
    indexed.push_back(std::move(ig));
  }

  shards = std::max<std::size_t>(1, std::min(shards, candidates.size()));
  std::vector<std::vector<MinedRule>> results(shards);
  std::vector<std::exception_ptr> errors(shards);
  auto work = [&](std::size_t shard) {
    try {
      std::size_t begin = candidates.size() * shard / shards;
      std::size_t end = candidates.size() * (shard + 1) / shards;
      for (std::size_t k = begin; k < end; ++k) {
        ContingencyTable t = matrix.table(indexed[k]);
        if (config.smoothing == 0.0 && (t.a == 0 || t.c == 0)) continue;  // weight undefined
        MinedRule rule{candidates[k], estimate_weight(t, config.smoothing), t, false};
        rule.significant = is_significant(rule.estimate, config.z_crit);
        results[shard].push_back(std::move(rule));
      }
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) workers.emplace_back(work, s);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<MinedRule> merged;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(merged));
  std::sort(merged.begin(), merged.end(), [](const MinedRule& x, const MinedRule& y) { return x.group < y.group; });
  return merged;
}

MiningRun mine(const Dataset& dataset, Hypothesis hypothesis, const MiningConfig& config, std::size_t shards) {
  Binarization bin = binarize_symptoms(dataset, hypothesis, config);
  auto candidates = enumerate_candidates(dataset, hypothesis, bin.descriptors, config);
  auto rules = evaluate_candidates(dataset, hypothesis, candidates, config, shards);

  MiningRun run;
  run.warnings = std::move(bin.warnings);
  run.descriptor_count = bin.descriptors.size();
  run.candidate_count = candidates.size();
  std::erase_if(rules, [](const MinedRule& r) { return !r.significant; });
  run.kb.rules = std::move(rules);

  std::int64_t pos = 0, neg = 0;
  count_classes(dataset, hypothesis, pos, neg);
  double prevalence = config.prior_prevalence.value_or(static_cast<double>(pos) / static_cast<double>(pos + neg));
  run.kb.prior = prior_log_odds(prevalence);
  run.kb.hypothesis = hypothesis;
  run.kb.config = config;
  run.kb.schema = dataset.schema();
  run.kb.schema_digest = dataset.schema().digest();
  return run;
}

}  // namespace woe
