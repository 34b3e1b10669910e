#include "io.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace l2t::io {

namespace {

std::string at(const std::string& path, const std::string& field) { return path + "." + field; }

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    fail(ErrorCode::Schema, path + ": " + what);
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) schema_error(path, "unexpected field '" + item.key() + "'");
    }
    for (const char* k : allowed)
        if (!obj.contains(k)) schema_error(path, std::string("missing field '") + k + "'");
}

Rational rational_field(const Json& obj, const std::string& path, const char* key) {
    const Json& v = obj.at(key);
    if (!v.is_string()) schema_error(at(path, key), "expected a rational string \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
        schema_error(at(path, key), e.what());
    }
}

unsigned unsigned_field(const Json& obj, const std::string& path, const char* key) {
    const Json& v = obj.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 1u << 20)
        schema_error(at(path, key), "expected a non-negative integer");
    return v.get<unsigned>();
}

unsigned line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<unsigned>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json tristate(Tristate v) {
    if (v == Tristate::Unknown) return "unknown";
    return v == Tristate::Yes;
}

}  // namespace

ExprDocument from_json(const Json& j) {
    check_keys(j, "$", {"kind", "terms"});
    if (!j["kind"].is_string()) schema_error("$.kind", "expected a string");
    const std::string kind = j["kind"].get<std::string>();
    const Json& terms = j["terms"];
    if (!terms.is_array()) schema_error("$.terms", "expected an array");

    auto path_of = [](std::size_t i) { return "$.terms[" + std::to_string(i) + "]"; };
    if (kind == "gexpr") {
        std::vector<GTerm> out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string p = path_of(i);
            check_keys(terms[i], p, {"c", "k", "a"});
            // locals, not a braced init: gcc 11 leaks built members when a later one throws
            Rational c = rational_field(terms[i], p, "c");
            const unsigned k = unsigned_field(terms[i], p, "k");
            Rational a = rational_field(terms[i], p, "a");
            out.push_back(GTerm{std::move(c), k, std::move(a)});
        }
        return GExpr(std::move(out));
    }
    if (kind == "sexpr") {
        std::vector<STerm> out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string p = path_of(i);
            check_keys(terms[i], p, {"c", "a", "m"});
            Rational c = rational_field(terms[i], p, "c");
            Rational a = rational_field(terms[i], p, "a");
            const unsigned m = unsigned_field(terms[i], p, "m");
            out.push_back(STerm{std::move(c), std::move(a), m});
        }
        return SExpr(std::move(out));
    }
    if (kind == "lpoly") {
        std::map<unsigned, Rational> out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string p = path_of(i);
            check_keys(terms[i], p, {"degree", "c"});
            out[unsigned_field(terms[i], p, "degree")] += rational_field(terms[i], p, "c");
        }
        return LPoly(std::move(out));
    }
    schema_error("$.kind", "unknown kind '" + kind + "' (expected gexpr, sexpr or lpoly)");
}

ExprDocument parse(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Schema, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                    ": malformed JSON (" + e.what() + ")");
    }
    return from_json(j);
}

Json to_json(const ExprDocument& doc) {
    Json terms = Json::array();
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, GExpr>) {
                for (const auto& t : e.terms())
                    terms.push_back(Json{{"c", to_string(t.c)}, {"k", t.k}, {"a", to_string(t.a)}});
            } else if constexpr (std::is_same_v<T, SExpr>) {
                for (const auto& t : e.terms())
                    terms.push_back(Json{{"c", to_string(t.c)}, {"a", to_string(t.a)}, {"m", t.m}});
            } else {
                for (const auto& [d, c] : e.coefficients())
                    terms.push_back(Json{{"degree", d}, {"c", to_string(c)}});
            }
        },
        doc);
    return Json{{"kind", kind_name(doc)}, {"terms", std::move(terms)}};
}

std::string serialize(const ExprDocument& doc) { return to_json(doc).dump(); }

const char* kind_name(const ExprDocument& doc) noexcept {
    switch (doc.index()) {
        case 0: return "gexpr";
        case 1: return "sexpr";
        default: return "lpoly";
    }
}

namespace {

template <typename T>
T parse_kind(std::string_view text, const char* expected) {
    ExprDocument doc = parse(text);
    if (!std::holds_alternative<T>(doc))
        fail(ErrorCode::Schema, std::string("$.kind: expected '") + expected + "', got '" + kind_name(doc) + "'");
    return std::get<T>(std::move(doc));
}

}  // namespace

GExpr parse_gexpr(std::string_view text) { return parse_kind<GExpr>(text, "gexpr"); }
SExpr parse_sexpr(std::string_view text) { return parse_kind<SExpr>(text, "sexpr"); }
LPoly parse_lpoly(std::string_view text) { return parse_kind<LPoly>(text, "lpoly"); }

Json to_json(const SeriesSolution& u) {
    const PDEProblem& p = u.problem();
    Json terms = Json::array();
    for (const auto& t : u.terms())
        terms.push_back(Json{{"n", t.n}, {"coefficient", to_string(t.coefficient)}, {"profile", to_json(t.profile)}});
    const char* prefactor = "1";
    switch (u.prefactor()) {
        case SeriesSolution::Prefactor::One: prefactor = "1"; break;
        case SeriesSolution::Prefactor::ExpNegAntiderivative: prefactor = "exp(-A(t))"; break;
        case SeriesSolution::Prefactor::HalfExpSeries: prefactor = "sum_{n<=N} A(t)^n/(2*n!)"; break;
    }
    return Json{
        {"family", family_name(p.family)},
        {"convention", convention_name(p.convention)},
        {"equation", p.equation()},
        {"truncation", u.truncation()},
        {"ratio", to_json(p.ratio)},
        {"antiderivative", to_json(u.antiderivative())},
        {"time_variable", u.time_variable() == SeriesSolution::TimeVariable::InverseTSquared ? "t^-2" : "A(t)"},
        {"prefactor", prefactor},
        {"unit", to_string(u.unit())},
        {"has_impulse_content", u.has_impulse_content()},
        {"terms", std::move(terms)},
        {"notes", u.notes()},
    };
}

Json to_json(const ResidualReport& report) {
    Json points = Json::array();
    for (const auto& pt : report.points)
        points.push_back(Json{{"x", number(pt.x)},
                              {"t", number(pt.t)},
                              {"residual", number(pt.residual)},
                              {"fd_residual", number(pt.fd_residual)}});
    return Json{
        {"family", family_name(report.problem.family)},
        {"convention", convention_name(report.problem.convention)},
        {"equation", report.problem.equation()},
        {"ratio", to_json(report.problem.ratio)},
        {"truncation", report.truncation},
        {"max_abs", number(report.max_abs)},
        {"max_fd_disagreement", number(report.max_fd_disagreement)},
        {"fd_tolerance", kFiniteDifferenceAgreement},
        {"fd_step", kFiniteDifferenceStep},
        {"fd_agrees", report.fd_agrees},
        {"truncation_bound", number(report.truncation_bound)},
        {"has_impulse_content", report.has_impulse_content},
        {"notes", report.notes},
        {"points", std::move(points)},
    };
}

Json to_json(const GrowthReport& report) {
    Json j = Json::object();
    j["exact_rate"] = report.exact_rate ? Json(to_string(*report.exact_rate)) : Json(nullptr);
    j["estimated_rate"] = report.estimated_rate ? number(*report.estimated_rate) : Json(nullptr);
    j["r_squared"] = report.r_squared ? number(*report.r_squared) : Json(nullptr);
    j["is_exponential_order"] = tristate(report.is_exponential_order);
    j["is_exp_squared_order"] = tristate(report.is_exp_squared_order);
    return j;
}

Json to_json(const TransformOdeCheck& check) {
    return Json{{"exact", check.exact},
                {"orders_checked", check.orders_checked},
                {"failing_orders", check.failing_orders}};
}

Json error_json(const std::string& code, const std::string& message) {
    return Json{{"code", code}, {"message", message}};
}

}  // namespace l2t::io
