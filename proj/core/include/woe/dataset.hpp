#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "woe/schema.hpp"

namespace woe {

struct Missing {
  bool operator==(const Missing&) const = default;
};

// A single attribute value: missing, a categorical label, or a continuous reading.
using Cell = std::variant<Missing, std::string, double>;

inline bool is_missing(const Cell& cell) { return std::holds_alternative<Missing>(cell); }

enum class Fate { lived, died, euthanized };

struct Outcomes {
  std::optional<bool> surgery_performed;
  std::optional<bool> surgical_lesion;
  std::optional<Fate> outcome;
  std::optional<std::string> lesion_type;

  bool operator==(const Outcomes&) const = default;
};

// Boolean outcome a knowledge base predicts.
enum class Hypothesis { surgical_lesion, surgery_performed };

std::string_view to_string(Hypothesis hypothesis);
// Throws ValidationError for anything but the two boolean outcome names.
Hypothesis parse_hypothesis(std::string_view name);

struct Case {
  std::string id;
  std::vector<Cell> values;  // aligned with the schema's attribute order
  Outcomes outcomes;

  std::optional<bool> label(Hypothesis hypothesis) const;

  bool operator==(const Case&) const = default;
};

// Validated cases sharing one schema. Immutable after construction; cases keep
// their ingestion order.
class Dataset {
 public:
  Dataset() = default;
  // Throws ValidationError if a case does not conform to the schema or an id repeats.
  Dataset(Schema schema, std::vector<Case> cases);

  const Schema& schema() const { return schema_; }
  std::span<const Case> cases() const { return cases_; }
  std::size_t size() const { return cases_.size(); }
  bool empty() const { return cases_.empty(); }
  const Case& operator[](std::size_t i) const { return cases_[i]; }

  const Case* find(std::string_view id) const;
  // Throws ValidationError for unknown attributes.
  const Cell& value(const Case& c, std::string_view attribute) const;

  bool operator==(const Dataset& other) const {
    return schema_ == other.schema_ && cases_ == other.cases_;
  }

 private:
  Schema schema_;
  std::vector<Case> cases_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Throws ValidationError when the case has the wrong arity or a value of the
// wrong kind or outside the categorical value list.
void validate_case(const Schema& schema, const Case& c);

// CSV with a header row. Columns: optional "id", any schema attributes, and
// the outcome columns. "?" marks a missing cell; cases with missing cells are kept.
Dataset parse_cases(std::string_view text, const Schema& schema);
// Inverse of parse_cases: id, every attribute in schema order, then outcomes.
std::string render_cases(const Dataset& dataset);

// True iff every listed attribute is observed for the case. Throws
// ValidationError for attributes outside the schema.
bool complete_for(const Schema& schema, const Case& c, std::span<const std::string> attributes);

}  // namespace woe
