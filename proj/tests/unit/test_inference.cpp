#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "woe/error.hpp"
#include "woe/inference.hpp"
#include "worked_example.hpp"

using namespace woe;

namespace {

MinedRule rule(std::vector<SymptomDescriptor> ds, double w, double se) {
  MinedRule r;
  r.group = SymptomGroup(std::move(ds));
  r.estimate = {w, se, se > 0 ? w / se : 0.0, 0.5};
  r.significant = true;
  return r;
}

SymptomDescriptor cat(std::string a, std::string v) { return SymptomDescriptor::categorical(std::move(a), std::move(v)); }

}  // namespace

TEST_CASE("all seven worked groups match the worked case") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  RuleMatch m = match_rules(d.schema(), d[0], kb);
  CHECK(m.matched.size() == 7);
  CHECK(m.unmatched_missing.empty());

  std::vector<std::string> attrs;
  for (const auto& r : m.matched) {
    auto a = r.group.attributes();
    attrs.insert(attrs.end(), a.begin(), a.end());
  }
  std::sort(attrs.begin(), attrs.end());
  CHECK(std::adjacent_find(attrs.begin(), attrs.end()) == attrs.end());
  CHECK(attrs.size() == 18);
}

TEST_CASE("missing values block rules instead of failing them") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  Case c = d[0];
  c.values[d.schema().require("pulse")] = Missing{};
  RuleMatch m = match_rules(d.schema(), c, kb);
  for (const auto& r : m.matched) {
    auto a = r.group.attributes();
    CHECK(std::find(a.begin(), a.end(), "pulse") == a.end());
  }
  CHECK(m.matched.size() == 6);
  CHECK(m.unmatched_missing == std::vector<std::string>{"pulse"});
}

TEST_CASE("a case satisfying one singleton rule matches only it") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  MinedRule only = rule({cat("pain", "depressed")}, 0.4, 0.1);
  MinedRule other = rule({cat("pain", "alert")}, -0.4, 0.1);
  kb.rules = {only, other};
  std::sort(kb.rules.begin(), kb.rules.end(), [](const MinedRule& x, const MinedRule& y) { return x.group < y.group; });
  RuleMatch m = match_rules(d.schema(), d[0], kb);
  REQUIRE(m.matched.size() == 1);
  CHECK(m.matched[0].group == only.group);
}

TEST_CASE("match_rules checks the schema digest") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  Attribute extra{"extra", AttributeKind::continuous, {}, "", {}};
  std::vector<Attribute> attrs(d.schema().attributes().begin(), d.schema().attributes().end());
  attrs.push_back(extra);
  Schema wider(attrs);
  Case c = d[0];
  c.values.push_back(Missing{});
  CHECK_THROWS_AS(match_rules(wider, c, kb), DigestMismatch);
}

TEST_CASE("group_score weighs size, strength and error") {
  MinedRule r = rule({cat("a", "x"), cat("b", "x"), cat("c", "x")}, 1.053, 0.4);
  CHECK(group_score(r) == doctest::Approx(3.653));
  MinedRule flat = rule({cat("a", "x")}, 0.0, 0.0);
  CHECK(group_score(flat) == 1.0);
  r.estimate.w = -1.053;
  CHECK(group_score(r, {0.0, 1.0, 0.0}) == doctest::Approx(1.053));
}

TEST_CASE("select_disjoint is greedy over attributes") {
  MinedRule hi = rule({cat("pulse", "x"), cat("pain", "x"), cat("gut", "x")}, 0.6, 0.0);   // score 3.6
  MinedRule lo = rule({cat("pulse", "y")}, 1.1, 0.0);                                        // score 2.1
  std::vector<MinedRule> two = {lo, hi};
  auto s = select_disjoint(two);
  REQUIRE(s.size() == 1);
  CHECK(s[0].group == hi.group);

  MinedRule a = rule({cat("p", "x"), cat("q", "x")}, 1.0, 0.0);  // 3
  MinedRule b = rule({cat("q", "y"), cat("r", "x")}, 0.9, 0.0);  // 2.9
  MinedRule c = rule({cat("r", "y")}, 0.0, 0.0);                 // 1
  std::vector<MinedRule> three = {c, b, a};
  auto chosen = select_disjoint(three);
  REQUIRE(chosen.size() == 2);
  CHECK(chosen[0].group == a.group);
  CHECK(chosen[1].group == c.group);

  KnowledgeBase kb = testing::worked_kb();
  CHECK(select_disjoint(kb.rules).size() == 7);
}

TEST_CASE("infer reproduces the worked ledger") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  EvidenceReport compat = infer(d.schema(), d[0], kb, {{}, ProbabilityMode::compat_odds});
  CHECK(compat.prior == doctest::Approx(0.530));
  CHECK(compat.weight_sum == doctest::Approx(3.573).epsilon(1e-6));
  CHECK(compat.posterior == doctest::Approx(4.103).epsilon(1e-6));
  CHECK(compat.probability == doctest::Approx(0.804).epsilon(0.001));
  CHECK(compat.rows.size() == 7);
  CHECK(std::is_sorted(compat.rows.begin(), compat.rows.end(),
                       [](const EvidenceRow& x, const EvidenceRow& y) { return x.w > y.w; }));

  EvidenceReport canonical = infer(d.schema(), d[0], kb);
  CHECK(canonical.probability == doctest::Approx(0.9837).epsilon(0.001));

  std::string text = render_report(compat);
  CHECK(text.find("3.573") != std::string::npos);
  CHECK(text.find("4.103") != std::string::npos);
  CHECK(text.find("0.530") != std::string::npos);
  CHECK(text.find("0.804") != std::string::npos);
  CHECK(report_to_json(compat).find("\"posterior\"") != std::string::npos);
}

TEST_CASE("infer without matches falls back to the prior") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  kb.rules.clear();
  EvidenceReport r = infer(d.schema(), d[0], kb);
  CHECK(r.weight_sum == 0.0);
  CHECK(r.posterior == r.prior);
  CHECK(r.probability == doctest::Approx(to_probability(r.prior)));
  std::string text = render_report(r);
  CHECK(text.find("No matching evidence.") != std::string::npos);
  CHECK(text.find("0.530") != std::string::npos);
}

TEST_CASE("a negative rule is rendered against the hypothesis") {
  KnowledgeBase kb = testing::worked_kb();
  Dataset d = testing::worked_case();
  kb.rules = {rule({cat("pain", "depressed")}, -0.75, 0.2)};
  std::string text = render_report(infer(d.schema(), d[0], kb));
  auto against = text.find("gainst");
  auto row = text.find("pain=depressed");
  REQUIRE(against != std::string::npos);
  REQUIRE(row != std::string::npos);
  CHECK(row > against);
  CHECK(text.find("-0.750") != std::string::npos);
}

TEST_CASE("the shipped worked knowledge base matches the fixture") {
  std::string shipped = testing::read_text(testing::data_path("worked_kb.json"));
  CHECK(shipped == save_kb(testing::worked_kb()));
  CHECK(load_kb(shipped) == testing::worked_kb());
}
