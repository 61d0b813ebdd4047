#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "woe/membership.hpp"

namespace woe {

enum class AttributeKind { categorical, continuous };

struct FuzzyLabel {
  std::string label;
  MembershipFunction mf;

  bool operator==(const FuzzyLabel&) const = default;
};

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::categorical;
  std::vector<std::string> values;  // categorical only
  std::string unit;                 // continuous only
  std::vector<FuzzyLabel> fuzzy;    // continuous only

  bool has_value(std::string_view value) const;
  const FuzzyLabel* find_label(std::string_view label) const;

  bool operator==(const Attribute&) const = default;
};

// Ordered, validated set of attributes. Immutable after construction.
class Schema {
 public:
  Schema() = default;
  // Throws ValidationError when an invariant is violated: duplicate or empty
  // names, names clashing with reserved CSV columns, empty or duplicated
  // categorical values, fuzzy labels on categorical attributes.
  explicit Schema(std::vector<Attribute> attributes);

  std::size_t size() const { return attributes_.size(); }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& at(std::size_t index) const { return attributes_.at(index); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws ValidationError for unknown names.
  std::size_t require(std::string_view name) const;
  const Attribute* find(std::string_view name) const;

  // Stable content hash of the canonical JSON rendering, e.g. "fnv1a64:0123abcd...".
  const std::string& digest() const { return digest_; }

  bool operator==(const Schema& other) const { return attributes_ == other.attributes_; }

 private:
  std::vector<Attribute> attributes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string digest_;
};

// Schema file: JSON array of {name, kind, values | unit, fuzzy:[{label, points}]}.
Schema parse_schema(std::string_view text);
std::string render_schema(const Schema& schema);

// Column names with fixed meaning in case files; attributes may not use them.
bool is_reserved_column(std::string_view name);

}  // namespace woe
