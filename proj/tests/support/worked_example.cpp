#include "worked_example.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace woe::testing {
namespace {

SymptomDescriptor cat(const char* attribute, const char* value) { return SymptomDescriptor::categorical(attribute, value); }
SymptomDescriptor fz(const char* attribute, const char* label) { return SymptomDescriptor::fuzzy(attribute, label, 0.5); }

MinedRule rule(std::vector<SymptomDescriptor> ds, double w) {
  MinedRule r;
  r.group = SymptomGroup(std::move(ds));
  r.estimate = {w, 0.25, w / 0.25, kDefaultSmoothing};
  r.significant = is_significant(r.estimate);
  return r;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string data_path(const std::string& name) { return std::string(WOE_DATA_DIR) + "/" + name; }

Schema colic_schema() { return parse_schema(read_text(data_path("colic_schema.json"))); }

Dataset worked_case() { return parse_cases(read_text(data_path("worked_case.csv")), colic_schema()); }

KnowledgeBase worked_kb() {
  KnowledgeBase kb;
  kb.schema = colic_schema();
  kb.schema_digest = kb.schema.digest();
  kb.hypothesis = Hypothesis::surgical_lesion;
  kb.prior.log_odds = 0.530;
  kb.prior.prevalence = std::exp(0.530) / (1.0 + std::exp(0.530));
  kb.rules = {
      rule({cat("age_class", "adult"), cat("peristalsis", "hypomotile"), cat("abdominal_distension", "moderate")}, 1.053),
      rule({cat("nasogastric_reflux", "slight"), cat("abdomen", "distended_large_intestine"), fz("total_protein", "normal")},
           0.861),
      rule({fz("pulse", "very_high"), cat("peripheral_pulse", "reduced"), cat("capillary_refill", "lt_3s")}, 0.861),
      rule({cat("extremity_temperature", "cool"), cat("reflux_amount", "none"), fz("packed_cell_volume", "normal")}, 0.661),
      rule({fz("rectal_temperature", "high"), cat("pain", "depressed")}, 0.372),
      rule({cat("abdominocentesis_appearance", "serosanguinous")}, 0.312),
      rule({fz("respiratory_rate", "high"), cat("mucous_membranes", "normal_pink"), cat("rectal_exam", "normal")}, -0.547),
  };
  std::sort(kb.rules.begin(), kb.rules.end(), [](const MinedRule& x, const MinedRule& y) { return x.group < y.group; });
  kb.validate();
  return kb;
}

}  // namespace woe::testing
