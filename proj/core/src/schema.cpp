#include "woe/schema.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include "json_codec.hpp"
#include "text.hpp"
#include "woe/error.hpp"

namespace woe {
namespace {

constexpr std::array<std::string_view, 5> kReservedColumns = {
    "id", "surgery_performed", "surgical_lesion", "outcome", "lesion_type"};

std::string_view kind_name(AttributeKind kind) {
  return kind == AttributeKind::categorical ? "categorical" : "continuous";
}

void validate_attribute(const Attribute& attr) {
  if (attr.name.empty()) throw ValidationError("attribute name must not be empty");
  if (is_reserved_column(attr.name)) {
    throw ValidationError("attribute name '" + attr.name + "' is reserved for a case-file column");
  }
  if (attr.kind == AttributeKind::categorical) {
    if (attr.values.empty()) {
      throw ValidationError("categorical attribute '" + attr.name + "' has no values");
    }
    std::set<std::string_view> seen;
    for (const auto& v : attr.values) {
      if (v.empty() || v == "?") {
        throw ValidationError("attribute '" + attr.name + "' has an empty or '?' value");
      }
      if (!seen.insert(v).second) {
        throw ValidationError("attribute '" + attr.name + "' lists value '" + v + "' twice");
      }
    }
    if (!attr.fuzzy.empty()) {
      throw ValidationError("fuzzy labels on categorical attribute '" + attr.name + "'");
    }
    return;
  }
  if (!attr.values.empty()) {
    throw ValidationError("continuous attribute '" + attr.name + "' must not list values");
  }
  std::set<std::string_view> labels;
  for (const auto& fl : attr.fuzzy) {
    if (fl.label.empty()) throw ValidationError("empty fuzzy label on '" + attr.name + "'");
    if (!labels.insert(fl.label).second) {
      throw ValidationError("attribute '" + attr.name + "' repeats fuzzy label '" + fl.label + "'");
    }
    if (fl.mf.breakpoints().empty()) {
      throw ValidationError("fuzzy label '" + fl.label + "' has no membership function");
    }
  }
}

}  // namespace

bool is_reserved_column(std::string_view name) {
  return std::find(kReservedColumns.begin(), kReservedColumns.end(), name) != kReservedColumns.end();
}

bool Attribute::has_value(std::string_view value) const {
  return std::find(values.begin(), values.end(), value) != values.end();
}

const FuzzyLabel* Attribute::find_label(std::string_view label) const {
  auto it = std::find_if(fuzzy.begin(), fuzzy.end(), [&](const FuzzyLabel& f) { return f.label == label; });
  return it == fuzzy.end() ? nullptr : &*it;
}

Schema::Schema(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    validate_attribute(attributes_[i]);
    if (!index_.emplace(attributes_[i].name, i).second) {
      throw ValidationError("duplicate attribute '" + attributes_[i].name + "'");
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a64(detail::schema_to_json(*this).dump())));
  digest_ = std::string("fnv1a64:") + hex;
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Schema::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw ValidationError("unknown attribute '" + std::string(name) + "'");
}

const Attribute* Schema::find(std::string_view name) const {
  auto i = index_of(name);
  return i ? &attributes_[*i] : nullptr;
}

Schema parse_schema(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed schema: ") + e.what(), detail::line_of_offset(text, e.byte));
  }
  return detail::schema_from_json(doc);
}

std::string render_schema(const Schema& schema) { return detail::schema_to_json(schema).dump(2) + "\n"; }

namespace detail {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  if (offset > 0) --offset;  // nlohmann reports the byte after the offending one
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

ordered_json schema_to_json(const Schema& schema) {
  ordered_json out = ordered_json::array();
  for (const auto& attr : schema.attributes()) {
    ordered_json a;
    a["name"] = attr.name;
    a["kind"] = kind_name(attr.kind);
    if (attr.kind == AttributeKind::categorical) {
      a["values"] = attr.values;
    } else {
      a["unit"] = attr.unit;
      ordered_json fuzzy = ordered_json::array();
      for (const auto& fl : attr.fuzzy) {
        ordered_json points = ordered_json::array();
        for (const auto& bp : fl.mf.breakpoints()) points.push_back({bp.x, bp.grade});
        fuzzy.push_back({{"label", fl.label}, {"points", points}});
      }
      a["fuzzy"] = fuzzy;
    }
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

MembershipFunction parse_points(const nlohmann::json& points, const std::string& where) {
  if (!points.is_array()) throw ParseError(where + ": 'points' must be an array of [x, grade] pairs");
  std::vector<Breakpoint> bps;
  for (const auto& p : points) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(where + ": each point must be [x, grade]");
    }
    bps.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  try {
    return MembershipFunction(std::move(bps));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

Schema schema_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ParseError("schema must be a JSON array of attribute objects");
  std::vector<Attribute> attrs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    std::string where = "attribute #" + std::to_string(i + 1);
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (key != "name" && key != "kind" && key != "values" && key != "unit" && key != "fuzzy") {
        throw ParseError(where + ": unknown field '" + key + "'");
      }
    }
    Attribute attr;
    attr.name = string_field(obj, "name", where);
    where += " ('" + attr.name + "')";
    std::string kind = string_field(obj, "kind", where);
    if (kind == "categorical") {
      attr.kind = AttributeKind::categorical;
      const auto& values = field(obj, "values", where);
      if (!values.is_array()) throw ParseError(where + ": 'values' must be an array");
      for (const auto& v : values) {
        if (!v.is_string()) throw ParseError(where + ": categorical values must be strings");
        attr.values.push_back(v.get<std::string>());
      }
      if (obj.contains("unit")) throw ValidationError(where + ": categorical attribute with a unit");
    } else if (kind == "continuous") {
      attr.kind = AttributeKind::continuous;
      if (obj.contains("values")) throw ValidationError(where + ": continuous attribute with values");
      if (obj.contains("unit")) attr.unit = string_field(obj, "unit", where);
    } else {
      throw ParseError(where + ": kind must be \"categorical\" or \"continuous\"");
    }
    if (auto it = obj.find("fuzzy"); it != obj.end()) {
      if (!it->is_array()) throw ParseError(where + ": 'fuzzy' must be an array");
      for (const auto& f : *it) {
        if (!f.is_object()) throw ParseError(where + ": fuzzy entries must be objects");
        FuzzyLabel fl;
        fl.label = string_field(f, "label", where);
        fl.mf = parse_points(field(f, "points", where), where + " label '" + fl.label + "'");
        attr.fuzzy.push_back(std::move(fl));
      }
    }
    attrs.push_back(std::move(attr));
  }
  return Schema(std::move(attrs));
}

}  // namespace detail
}  // namespace woe
