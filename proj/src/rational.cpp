#include "rational.hpp"

#include "error.hpp"

#include <cctype>

namespace l2t {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Schema: return "SchemaError";
        case ErrorCode::Precondition: return "PreconditionError";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::DivergentIntegral: return "DivergentIntegral";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::ImpulseContent: return "ImpulseContent";
        case ErrorCode::GridDomain: return "GridDomain";
        case ErrorCode::NonPositiveSample: return "NonPositiveSample";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
        fail(ErrorCode::Schema, "invalid rational '" + std::string(text) + "'");

    if (slash != std::string_view::npos && den.find_first_not_of('0') == std::string_view::npos)
        fail(ErrorCode::Schema, "zero denominator in rational '" + std::string(text) + "'");

    std::string normalized(text.front() == '+' ? text.substr(1) : text);
    Rational r;
    r.set_str(normalized, 10);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_str(10);
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

}  // namespace l2t
