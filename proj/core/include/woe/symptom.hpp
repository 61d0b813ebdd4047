#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "woe/dataset.hpp"
#include "woe/evidence.hpp"

namespace woe {

struct CategoricalTest {
  std::string value;

  auto operator<=>(const CategoricalTest&) const = default;
};

// Holds when the label's grade is >= alpha.
struct FuzzyTest {
  std::string label;
  double alpha = 1.0;

  bool operator==(const FuzzyTest&) const = default;
  std::partial_ordering operator<=>(const FuzzyTest&) const = default;
};

// A crisp symptom over one attribute. Ordered by (attribute, test).
class SymptomDescriptor {
 public:
  using Test = std::variant<CategoricalTest, FuzzyTest>;

  static SymptomDescriptor categorical(std::string attribute, std::string value);
  // Throws ValidationError unless alpha is in (0,1].
  static SymptomDescriptor fuzzy(std::string attribute, std::string label, double alpha);

  const std::string& attribute() const { return attribute_; }
  const Test& test() const { return test_; }
  bool is_fuzzy() const { return std::holds_alternative<FuzzyTest>(test_); }

  // nullopt when the attribute is missing for the case. Throws
  // ValidationError when the descriptor does not fit the schema.
  std::optional<bool> evaluate(const Schema& schema, const Case& c) const;
  // Throws ValidationError when the attribute, value or label is unknown.
  void check_against(const Schema& schema) const;

  // "pain=depressed" or "pulse~very_high@0.5".
  std::string describe() const;

  bool operator==(const SymptomDescriptor&) const = default;
  std::partial_ordering operator<=>(const SymptomDescriptor&) const = default;

 private:
  SymptomDescriptor(std::string attribute, Test test)
      : attribute_(std::move(attribute)), test_(std::move(test)) {}

  std::string attribute_;
  Test test_;
};

// Conjunction of descriptors on distinct attributes, stored sorted.
class SymptomGroup {
 public:
  SymptomGroup() = default;
  // Sorts the descriptors. Throws ValidationError when empty or when two
  // descriptors share an attribute.
  explicit SymptomGroup(std::vector<SymptomDescriptor> descriptors);

  std::span<const SymptomDescriptor> descriptors() const { return descriptors_; }
  std::size_t size() const { return descriptors_.size(); }
  std::vector<std::string> attributes() const;
  bool shares_attribute(const SymptomGroup& other) const;

  std::optional<bool> evaluate(const Schema& schema, const Case& c) const;
  void check_against(const Schema& schema) const;

  // Descriptors joined with ", ".
  std::string describe() const;

  bool operator==(const SymptomGroup&) const = default;
  // Lexicographic over descriptors, so the canonical id order is total.
  std::partial_ordering operator<=>(const SymptomGroup& other) const;

 private:
  std::vector<SymptomDescriptor> descriptors_;
};

// Counts the group against the hypothesis. Cases missing any group attribute
// or the hypothesis label are excluded and counted in n_excluded.
ContingencyTable build_table(const Dataset& dataset, const SymptomGroup& group,
                             Hypothesis hypothesis = Hypothesis::surgical_lesion);

}  // namespace woe
