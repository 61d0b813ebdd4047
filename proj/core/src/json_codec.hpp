#pragma once

// JSON mapping shared by the schema file and the knowledge base, which embeds
// the schema it was mined with.

#include <json.hpp>

#include "woe/schema.hpp"

namespace woe::detail {

using ordered_json = nlohmann::ordered_json;

ordered_json schema_to_json(const Schema& schema);
// Throws ParseError for structurally wrong documents, ValidationError for
// invariant violations.
Schema schema_from_json(const nlohmann::json& doc);

// Line of a byte offset in text, 1-based.
std::size_t line_of_offset(std::string_view text, std::size_t offset);

}  // namespace woe::detail
