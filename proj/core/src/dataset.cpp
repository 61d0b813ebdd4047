#include "woe/dataset.hpp"

#include <cmath>
#include <set>

#include "csv.hpp"
#include "text.hpp"
#include "woe/error.hpp"

namespace woe {
namespace {

enum class Column { id, attribute, surgery_performed, surgical_lesion, outcome, lesion_type };

struct ColumnSpec {
  Column kind;
  std::size_t attribute = 0;
};

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "yes" || s == "true" || s == "1") return true;
  if (s == "no" || s == "false" || s == "0") return false;
  return std::nullopt;
}

std::optional<Fate> parse_fate(std::string_view s) {
  if (s == "lived") return Fate::lived;
  if (s == "died") return Fate::died;
  if (s == "euthanized") return Fate::euthanized;
  return std::nullopt;
}

std::string_view fate_name(Fate fate) {
  switch (fate) {
    case Fate::lived: return "lived";
    case Fate::died: return "died";
    case Fate::euthanized: return "euthanized";
  }
  return "?";
}

[[noreturn]] void cell_error(std::size_t line, const std::string& column, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ", column '" + column + "': " + msg);
}

}  // namespace

std::string_view to_string(Hypothesis hypothesis) {
  return hypothesis == Hypothesis::surgical_lesion ? "surgical_lesion" : "surgery_performed";
}

Hypothesis parse_hypothesis(std::string_view name) {
  if (name == "surgical_lesion") return Hypothesis::surgical_lesion;
  if (name == "surgery_performed") return Hypothesis::surgery_performed;
  throw ValidationError("hypothesis must be surgical_lesion or surgery_performed, got '" +
                        std::string(name) + "'");
}

std::optional<bool> Case::label(Hypothesis hypothesis) const {
  return hypothesis == Hypothesis::surgical_lesion ? outcomes.surgical_lesion : outcomes.surgery_performed;
}

void validate_case(const Schema& schema, const Case& c) {
  if (c.values.size() != schema.size()) {
    throw ValidationError("case '" + c.id + "' has " + std::to_string(c.values.size()) +
                          " values, schema has " + std::to_string(schema.size()) + " attributes");
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const Attribute& attr = schema.at(i);
    const Cell& cell = c.values[i];
    if (is_missing(cell)) continue;
    if (attr.kind == AttributeKind::categorical) {
      const auto* s = std::get_if<std::string>(&cell);
      if (s == nullptr) {
        throw ValidationError("case '" + c.id + "': categorical '" + attr.name + "' holds a number");
      }
      if (!attr.has_value(*s)) {
        throw ValidationError("case '" + c.id + "': '" + *s + "' is not a value of '" + attr.name + "'");
      }
    } else {
      const auto* x = std::get_if<double>(&cell);
      if (x == nullptr || !std::isfinite(*x)) {
        throw ValidationError("case '" + c.id + "': continuous '" + attr.name + "' needs a finite number");
      }
    }
  }
}

Dataset::Dataset(Schema schema, std::vector<Case> cases) : schema_(std::move(schema)), cases_(std::move(cases)) {
  for (std::size_t i = 0; i < cases_.size(); ++i) {
    validate_case(schema_, cases_[i]);
    if (cases_[i].id.empty()) throw ValidationError("case #" + std::to_string(i + 1) + " has an empty id");
    if (!by_id_.emplace(cases_[i].id, i).second) {
      throw ValidationError("duplicate case id '" + cases_[i].id + "'");
    }
  }
}

const Case* Dataset::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &cases_[it->second];
}

const Cell& Dataset::value(const Case& c, std::string_view attribute) const {
  return c.values.at(schema_.require(attribute));
}

Dataset parse_cases(std::string_view text, const Schema& schema) {
  auto rows = detail::read_csv(text);
  if (rows.empty()) throw ParseError("case file has no header row", 1);

  const auto& header = rows.front();
  std::vector<ColumnSpec> columns;
  std::set<std::string> seen;
  for (const auto& name : header.fields) {
    if (!seen.insert(name).second) throw ParseError("duplicate column '" + name + "'", header.line);
    if (name == "id") columns.push_back({Column::id});
    else if (name == "surgery_performed") columns.push_back({Column::surgery_performed});
    else if (name == "surgical_lesion") columns.push_back({Column::surgical_lesion});
    else if (name == "outcome") columns.push_back({Column::outcome});
    else if (name == "lesion_type") columns.push_back({Column::lesion_type});
    else if (auto idx = schema.index_of(name)) columns.push_back({Column::attribute, *idx});
    else throw ValidationError("line " + std::to_string(header.line) + ": unknown column '" + name + "'");
  }

  std::vector<Case> cases;
  cases.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != columns.size()) {
      throw ParseError("expected " + std::to_string(columns.size()) + " fields, found " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    Case c;
    c.id = std::to_string(r);
    c.values.assign(schema.size(), Missing{});
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const std::string& raw = row.fields[k];
      const std::string& col = header.fields[k];
      bool missing = raw == "?";
      switch (columns[k].kind) {
        case Column::id:
          if (missing || raw.empty()) cell_error(row.line, col, "case id must be present");
          c.id = raw;
          break;
        case Column::attribute: {
          if (missing) break;
          const Attribute& attr = schema.at(columns[k].attribute);
          if (attr.kind == AttributeKind::categorical) {
            if (!attr.has_value(raw)) cell_error(row.line, col, "'" + raw + "' is not a declared value");
            c.values[columns[k].attribute] = raw;
          } else {
            auto x = detail::parse_double(raw);
            if (!x || !std::isfinite(*x)) cell_error(row.line, col, "'" + raw + "' is not a number");
            c.values[columns[k].attribute] = *x;
          }
          break;
        }
        case Column::surgery_performed:
        case Column::surgical_lesion: {
          if (missing) break;
          auto b = parse_bool(raw);
          if (!b) cell_error(row.line, col, "'" + raw + "' is not yes/no");
          (columns[k].kind == Column::surgical_lesion ? c.outcomes.surgical_lesion
                                                      : c.outcomes.surgery_performed) = *b;
          break;
        }
        case Column::outcome: {
          if (missing) break;
          auto f = parse_fate(raw);
          if (!f) cell_error(row.line, col, "'" + raw + "' is not lived/died/euthanized");
          c.outcomes.outcome = *f;
          break;
        }
        case Column::lesion_type:
          if (missing) break;
          if (raw.empty()) cell_error(row.line, col, "empty lesion code");
          c.outcomes.lesion_type = raw;
          break;
      }
    }
    cases.push_back(std::move(c));
  }
  return Dataset(schema, std::move(cases));
}

std::string render_cases(const Dataset& dataset) {
  const Schema& schema = dataset.schema();
  std::string out = "id";
  for (const auto& attr : schema.attributes()) out += "," + detail::csv_field(attr.name);
  out += ",surgery_performed,surgical_lesion,outcome,lesion_type\n";
  auto yes_no = [](const std::optional<bool>& b) -> std::string { return b ? (*b ? "yes" : "no") : "?"; };
  for (const Case& c : dataset.cases()) {
    out += detail::csv_field(c.id);
    for (const Cell& cell : c.values) {
      out += ',';
      if (const auto* s = std::get_if<std::string>(&cell)) out += detail::csv_field(*s);
      else if (const auto* x = std::get_if<double>(&cell)) out += detail::shortest(*x);
      else out += '?';
    }
    out += ',' + yes_no(c.outcomes.surgery_performed);
    out += ',' + yes_no(c.outcomes.surgical_lesion);
    out += ',' + (c.outcomes.outcome ? std::string(fate_name(*c.outcomes.outcome)) : std::string("?"));
    out += ',' + (c.outcomes.lesion_type ? detail::csv_field(*c.outcomes.lesion_type) : std::string("?"));
    out += '\n';
  }
  return out;
}

bool complete_for(const Schema& schema, const Case& c, std::span<const std::string> attributes) {
  bool complete = true;
  for (const auto& name : attributes) {
    std::size_t i = schema.require(name);  // unknown names throw even after a miss
    if (i >= c.values.size() || is_missing(c.values[i])) complete = false;
  }
  return complete;
}

}  // namespace woe
