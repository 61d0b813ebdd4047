#include "woe/knowledge_base.hpp"

#include <cmath>

#include "json_codec.hpp"
#include "woe/error.hpp"

namespace woe {
namespace {

using detail::ordered_json;
using nlohmann::json;

constexpr const char* kFormat = "woe-knowledge-base";
constexpr int kVersion = 1;

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

ordered_json descriptor_to_json(const SymptomDescriptor& d) {
  ordered_json out;
  out["attribute"] = d.attribute();
  if (const auto* cat = std::get_if<CategoricalTest>(&d.test())) {
    out["value"] = cat->value;
  } else {
    const auto& fz = std::get<FuzzyTest>(d.test());
    out["label"] = fz.label;
    out["alpha"] = fz.alpha;
  }
  return out;
}

const json& at(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& obj, const char* key) {
  const json& v = at(obj, key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const char* key) {
  const json& v = at(obj, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string text(const json& obj, const char* key) {
  const json& v = at(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

SymptomDescriptor descriptor_from_json(const json& obj) {
  std::string attribute = text(obj, "attribute");
  if (obj.contains("value")) return SymptomDescriptor::categorical(std::move(attribute), text(obj, "value"));
  return SymptomDescriptor::fuzzy(std::move(attribute), text(obj, "label"), number(obj, "alpha"));
}

MiningConfig config_from_json(const json& obj) {
  MiningConfig config;
  config.max_size = static_cast<int>(integer(obj, "max_size"));
  config.min_support = static_cast<int>(integer(obj, "min_support"));
  config.z_crit = number(obj, "z_crit");
  config.smoothing = number(obj, "smoothing");
  config.alpha_step = number(obj, "alpha_step");
  const json& sw = at(obj, "score_weights");
  config.score_weights = {number(sw, "size"), number(sw, "weight"), number(sw, "error")};
  const json& prior = at(obj, "prior_prevalence");
  if (!prior.is_null()) config.prior_prevalence = number(obj, "prior_prevalence");
  return config;
}

KnowledgeBase kb_from_json(const json& doc) {
  if (text(doc, "format") != kFormat) throw ParseError("not a knowledge base document");
  if (integer(doc, "version") != kVersion) throw ParseError("unsupported knowledge base version");

  KnowledgeBase kb;
  kb.hypothesis = parse_hypothesis(text(doc, "hypothesis"));
  kb.config = config_from_json(at(doc, "config"));
  kb.config.validate();
  const json& prior = at(doc, "prior");
  kb.prior = prior_log_odds(number(prior, "prevalence"));
  kb.prior.log_odds = number(prior, "log_odds");
  kb.schema_digest = text(doc, "schema_digest");
  kb.schema = detail::schema_from_json(at(doc, "schema"));

  const json& rules = at(doc, "rules");
  if (!rules.is_array()) throw ParseError("'rules' must be an array");
  kb.rules.reserve(rules.size());
  for (const json& r : rules) {
    const json& group = at(r, "group");
    if (!group.is_array()) throw ParseError("'group' must be an array of descriptors");
    std::vector<SymptomDescriptor> ds;
    for (const json& d : group) ds.push_back(descriptor_from_json(d));
    MinedRule rule;
    rule.group = SymptomGroup(std::move(ds));
    rule.table = {integer(r, "a"), integer(r, "b"), integer(r, "c"), integer(r, "d"), integer(r, "n_excluded")};
    rule.estimate = {number(r, "w"), number(r, "se"), number(r, "z"), kb.config.smoothing};
    rule.significant = is_significant(rule.estimate, kb.config.z_crit);
    kb.rules.push_back(std::move(rule));
  }
  kb.validate();
  return kb;
}

}  // namespace

void MiningConfig::validate() const {
  if (max_size < 1) throw ValidationError("max_size must be >= 1");
  if (min_support < 1) throw ValidationError("min_support must be >= 1");
  if (!(std::isfinite(z_crit) && z_crit > 0.0)) throw ValidationError("z_crit must be > 0");
  if (!finite_nonneg(smoothing)) throw ValidationError("smoothing must be >= 0");
  if (!(alpha_step > 0.0 && alpha_step <= 1.0)) throw ValidationError("alpha_step must lie in (0,1]");
  if (!finite_nonneg(score_weights.size) || !finite_nonneg(score_weights.weight) ||
      !finite_nonneg(score_weights.error)) {
    throw ValidationError("score weights must be finite and >= 0");
  }
  if (prior_prevalence && !(*prior_prevalence > 0.0 && *prior_prevalence < 1.0)) {
    throw ValidationError("prior prevalence must lie strictly inside (0,1)");
  }
}

void KnowledgeBase::validate() const {
  config.validate();
  if (schema_digest != schema.digest()) {
    throw ValidationError("knowledge base schema does not match its digest " + schema_digest);
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const SymptomGroup& g = rules[i].group;
    g.check_against(schema);
    if (g.size() > static_cast<std::size_t>(config.max_size)) {
      throw ValidationError("rule '" + g.describe() + "' exceeds max_size");
    }
    if (i > 0 && !(rules[i - 1].group < g)) {
      throw ValidationError("rules must be sorted by group without duplicates (at '" + g.describe() + "')");
    }
  }
}

void KnowledgeBase::require_schema(const Schema& other) const {
  if (other.digest() != schema_digest) {
    throw DigestMismatch("schema digest " + other.digest() + " does not match knowledge base digest " +
                         schema_digest);
  }
}

std::string save_kb(const KnowledgeBase& kb) {
  ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["hypothesis"] = to_string(kb.hypothesis);
  ordered_json config;
  config["max_size"] = kb.config.max_size;
  config["min_support"] = kb.config.min_support;
  config["z_crit"] = kb.config.z_crit;
  config["smoothing"] = kb.config.smoothing;
  config["alpha_step"] = kb.config.alpha_step;
  config["score_weights"] = ordered_json{{"size", kb.config.score_weights.size},
                                         {"weight", kb.config.score_weights.weight},
                                         {"error", kb.config.score_weights.error}};
  config["prior_prevalence"] = kb.config.prior_prevalence ? ordered_json(*kb.config.prior_prevalence) : ordered_json();
  doc["config"] = std::move(config);
  doc["prior"] = ordered_json{{"prevalence", kb.prior.prevalence}, {"log_odds", kb.prior.log_odds}};
  doc["schema_digest"] = kb.schema_digest;
  doc["schema"] = detail::schema_to_json(kb.schema);
  ordered_json rules = ordered_json::array();
  for (const MinedRule& r : kb.rules) {
    ordered_json rule;
    ordered_json group = ordered_json::array();
    for (const auto& d : r.group.descriptors()) group.push_back(descriptor_to_json(d));
    rule["group"] = std::move(group);
    rule["a"] = r.table.a;
    rule["b"] = r.table.b;
    rule["c"] = r.table.c;
    rule["d"] = r.table.d;
    rule["n_excluded"] = r.table.n_excluded;
    rule["w"] = r.estimate.w;
    rule["se"] = r.estimate.se;
    rule["z"] = r.estimate.z;
    rules.push_back(std::move(rule));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

KnowledgeBase load_kb(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content.begin(), content.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed knowledge base: ") + e.what(), detail::line_of_offset(content, e.byte));
  }
  try {
    return kb_from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("corrupted knowledge base: ") + e.what());
  }
}

}  // namespace woe
