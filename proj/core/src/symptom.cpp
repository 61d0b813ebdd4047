#include "woe/symptom.hpp"

#include <algorithm>
#include <cmath>

#include "text.hpp"
#include "woe/error.hpp"

namespace woe {

SymptomDescriptor SymptomDescriptor::categorical(std::string attribute, std::string value) {
  return SymptomDescriptor(std::move(attribute), CategoricalTest{std::move(value)});
}

SymptomDescriptor SymptomDescriptor::fuzzy(std::string attribute, std::string label, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha for '" + attribute + "~" + label + "' must lie in (0,1]");
  }
  return SymptomDescriptor(std::move(attribute), FuzzyTest{std::move(label), alpha});
}

void SymptomDescriptor::check_against(const Schema& schema) const {
  const Attribute* attr = schema.find(attribute_);
  if (attr == nullptr) throw ValidationError("unknown attribute '" + attribute_ + "'");
  if (const auto* cat = std::get_if<CategoricalTest>(&test_)) {
    if (attr->kind != AttributeKind::categorical || !attr->has_value(cat->value)) {
      throw ValidationError("'" + describe() + "' does not name a categorical value of the schema");
    }
  } else {
    const auto& fz = std::get<FuzzyTest>(test_);
    if (attr->kind != AttributeKind::continuous || attr->find_label(fz.label) == nullptr) {
      throw ValidationError("'" + describe() + "' does not name a fuzzy label of the schema");
    }
  }
}

std::optional<bool> SymptomDescriptor::evaluate(const Schema& schema, const Case& c) const {
  std::size_t index = schema.require(attribute_);
  const Cell& cell = c.values.at(index);
  if (is_missing(cell)) return std::nullopt;
  if (const auto* cat = std::get_if<CategoricalTest>(&test_)) {
    const auto* s = std::get_if<std::string>(&cell);
    if (s == nullptr) throw ValidationError("'" + attribute_ + "' is not categorical");
    return *s == cat->value;
  }
  const auto& fz = std::get<FuzzyTest>(test_);
  const auto* x = std::get_if<double>(&cell);
  const FuzzyLabel* label = schema.at(index).find_label(fz.label);
  if (x == nullptr || label == nullptr) {
    throw ValidationError("'" + describe() + "' does not fit the schema");
  }
  return label->mf(*x) >= fz.alpha;
}

std::string SymptomDescriptor::describe() const {
  if (const auto* cat = std::get_if<CategoricalTest>(&test_)) return attribute_ + "=" + cat->value;
  const auto& fz = std::get<FuzzyTest>(test_);
  return attribute_ + "~" + fz.label + "@" + detail::shortest(fz.alpha);
}

SymptomGroup::SymptomGroup(std::vector<SymptomDescriptor> descriptors) : descriptors_(std::move(descriptors)) {
  if (descriptors_.empty()) throw ValidationError("a symptom group needs at least one descriptor");
  std::sort(descriptors_.begin(), descriptors_.end());
  for (std::size_t i = 1; i < descriptors_.size(); ++i) {
    if (descriptors_[i - 1].attribute() == descriptors_[i].attribute()) {
      throw ValidationError("symptom group tests attribute '" + descriptors_[i].attribute() + "' twice");
    }
  }
}

std::vector<std::string> SymptomGroup::attributes() const {
  std::vector<std::string> out;
  out.reserve(descriptors_.size());
  for (const auto& d : descriptors_) out.push_back(d.attribute());
  return out;
}

bool SymptomGroup::shares_attribute(const SymptomGroup& other) const {
  for (const auto& d : descriptors_) {
    for (const auto& e : other.descriptors_) {
      if (d.attribute() == e.attribute()) return true;
    }
  }
  return false;
}

std::optional<bool> SymptomGroup::evaluate(const Schema& schema, const Case& c) const {
  bool holds = true;
  for (const auto& d : descriptors_) {
    auto v = d.evaluate(schema, c);
    if (!v) return std::nullopt;
    holds = holds && *v;
  }
  return holds;
}

void SymptomGroup::check_against(const Schema& schema) const {
  for (const auto& d : descriptors_) d.check_against(schema);
}

std::string SymptomGroup::describe() const {
  std::string out;
  for (const auto& d : descriptors_) {
    if (!out.empty()) out += ", ";
    out += d.describe();
  }
  return out;
}

std::partial_ordering SymptomGroup::operator<=>(const SymptomGroup& other) const {
  return std::lexicographical_compare_three_way(descriptors_.begin(), descriptors_.end(),
                                                other.descriptors_.begin(), other.descriptors_.end());
}

ContingencyTable build_table(const Dataset& dataset, const SymptomGroup& group, Hypothesis hypothesis) {
  group.check_against(dataset.schema());
  ContingencyTable t;
  for (const Case& c : dataset.cases()) {
    auto label = c.label(hypothesis);
    auto holds = group.evaluate(dataset.schema(), c);
    if (!label || !holds) {
      ++t.n_excluded;
      continue;
    }
    if (*holds) ++(*label ? t.a : t.c);
    else ++(*label ? t.b : t.d);
  }
  return t;
}

}  // namespace woe
