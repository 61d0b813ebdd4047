#include "woe/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "json_codec.hpp"
#include "text.hpp"
#include "woe/error.hpp"

namespace woe {

RuleMatch match_rules(const Schema& schema, const Case& c, const KnowledgeBase& kb) {
  kb.require_schema(schema);
  RuleMatch out;
  std::set<std::string> missing;
  for (const MinedRule& rule : kb.rules) {
    bool blocked = false;
    bool holds = true;
    for (const auto& d : rule.group.descriptors()) {
      auto v = d.evaluate(schema, c);
      if (!v) {
        blocked = true;
        missing.insert(d.attribute());
      } else if (!*v) {
        holds = false;
      }
    }
    if (!blocked && holds) out.matched.push_back(rule);
  }
  out.unmatched_missing.assign(missing.begin(), missing.end());
  return out;
}

double group_score(const MinedRule& rule, const ScoreWeights& weights) {
  return weights.size * static_cast<double>(rule.group.size()) + weights.weight * std::abs(rule.estimate.w) -
         weights.error * rule.estimate.se;
}

std::vector<MinedRule> select_disjoint(std::span<const MinedRule> matched, const ScoreWeights& weights) {
  std::vector<std::size_t> order(matched.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> scores;
  scores.reserve(matched.size());
  for (const auto& r : matched) scores.push_back(group_score(r, weights));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return matched[x].group < matched[y].group;
  });

  std::vector<MinedRule> selected;
  std::set<std::string> used;
  for (std::size_t i : order) {
    const auto attrs = matched[i].group.attributes();
    bool clash = std::any_of(attrs.begin(), attrs.end(), [&](const std::string& a) { return used.count(a) > 0; });
    if (clash) continue;
    used.insert(attrs.begin(), attrs.end());
    selected.push_back(matched[i]);
  }
  return selected;
}

EvidenceReport infer(const Schema& schema, const Case& c, const KnowledgeBase& kb, const InferenceOptions& options) {
  RuleMatch match = match_rules(schema, c, kb);
  EvidenceReport report;
  report.case_id = c.id;
  report.hypothesis = std::string(to_string(kb.hypothesis));
  report.mode = options.mode;
  report.selected = select_disjoint(match.matched, options.score_weights);
  report.unmatched_missing = std::move(match.unmatched_missing);

  std::vector<double> weights;
  for (const auto& r : report.selected) {
    weights.push_back(r.estimate.w);
    report.rows.push_back({r.group.describe(), r.estimate.w});
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const EvidenceRow& x, const EvidenceRow& y) {
    if (x.w != y.w) return x.w > y.w;
    return x.group < y.group;
  });
  report.prior = kb.prior.log_odds;
  report.weight_sum = sum_weights(weights);
  report.posterior = report.prior + report.weight_sum;
  report.probability = to_probability(report.posterior, options.mode);
  return report;
}

namespace {

void append_rows(std::string& out, const std::vector<const EvidenceRow*>& rows, std::size_t width) {
  for (const EvidenceRow* row : rows) {
    out += "  " + row->group;
    out.append(width - row->group.size() + 2, ' ');
    std::string w = detail::fixed(row->w, 3);
    out.append(w.size() < 7 ? 7 - w.size() : 0, ' ');
    out += w + "\n";
  }
}

}  // namespace

std::string render_report(const EvidenceReport& report) {
  std::vector<const EvidenceRow*> favor, against, neutral;
  std::size_t width = std::string("Symptom group").size();
  for (const auto& row : report.rows) {
    (row.w > 0.0 ? favor : row.w < 0.0 ? against : neutral).push_back(&row);
    width = std::max(width, row.group.size());
  }

  std::string out = "Case " + report.case_id + "\n\n";
  auto section = [&](const std::string& title, const std::vector<const EvidenceRow*>& rows) {
    if (rows.empty()) return;
    out += title + ":\n";
    out += "  Symptom group";
    out.append(width - 13 + 2, ' ');
    out += " W(H:E)\n";
    append_rows(out, rows, width);
    out += "\n";
  };
  if (report.rows.empty()) {
    out += "No matching evidence.\n\n";
  } else {
    section("Evidence in favor of " + report.hypothesis, favor);
    section("Evidence against " + report.hypothesis, against);
    section("Neutral evidence", neutral);
  }
  if (!report.unmatched_missing.empty()) {
    out += "Rules blocked by missing values:";
    for (const auto& a : report.unmatched_missing) out += " " + a;
    out += "\n\n";
  }
  out += "Final results:\n";
  out += "  Prior log odds   ===== " + detail::fixed(report.prior, 3) + "\n";
  out += "  + W(H:E)         ===== " + detail::fixed(report.weight_sum, 3) + "\n";
  out += "  = Post. log odds ===== " + detail::fixed(report.posterior, 3) + "\n";
  out += "  => p(" + report.hypothesis + ") = " + detail::fixed(report.probability, 3) + "  [" +
         std::string(to_string(report.mode)) + "]\n";
  return out;
}

std::string report_to_json(const EvidenceReport& report) {
  detail::ordered_json doc;
  doc["case_id"] = report.case_id;
  doc["hypothesis"] = report.hypothesis;
  detail::ordered_json rows = detail::ordered_json::array();
  for (const auto& row : report.rows) rows.push_back({{"group", row.group}, {"w", row.w}});
  doc["rows"] = std::move(rows);
  doc["prior"] = report.prior;
  doc["weight_sum"] = report.weight_sum;
  doc["posterior"] = report.posterior;
  doc["probability"] = report.probability;
  doc["mode"] = to_string(report.mode);
  doc["unmatched_missing"] = report.unmatched_missing;
  return doc.dump(2) + "\n";
}

}  // namespace woe
