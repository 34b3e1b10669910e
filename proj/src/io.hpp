#pragma once

#include "gexpr.hpp"
#include "lpoly.hpp"
#include "order.hpp"
#include "pde.hpp"
#include "sexpr.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace l2t::io {

using Json = nlohmann::ordered_json;

/// {"kind": "gexpr"|"sexpr"|"lpoly", "terms": [...]}; rationals travel as
/// "p/q" strings.
using ExprDocument = std::variant<GExpr, SExpr, LPoly>;

/// Throws Error{Schema} naming the line (for malformed JSON) or the
/// offending field path.
ExprDocument parse(std::string_view text);
ExprDocument from_json(const Json& j);

/// Compact, canonical, byte-stable text.
std::string serialize(const ExprDocument& doc);
Json to_json(const ExprDocument& doc);

const char* kind_name(const ExprDocument& doc) noexcept;

/// parse() followed by a kind check.
GExpr parse_gexpr(std::string_view text);
SExpr parse_sexpr(std::string_view text);
LPoly parse_lpoly(std::string_view text);

Json to_json(const SeriesSolution& u);
Json to_json(const ResidualReport& report);
Json to_json(const GrowthReport& report);
Json to_json(const TransformOdeCheck& check);

Json error_json(const std::string& code, const std::string& message);

}  // namespace l2t::io
