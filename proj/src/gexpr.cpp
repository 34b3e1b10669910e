#include "gexpr.hpp"

#include "error.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <ostream>

namespace l2t {

namespace {

bool term_order(const GTerm& l, const GTerm& r) {
    if (l.a != r.a) return l.a < r.a;
    return l.k < r.k;
}

// Largest exponent exp() accepts without overflowing.
const double kMaxExp = std::log(DBL_MAX);
const long double kMaxExpLong = std::log(LDBL_MAX);

}  // namespace

GExpr canonicalize(std::vector<GTerm> terms) {
    return GExpr(std::move(terms));
}

GExpr::GExpr(std::vector<GTerm> terms) {
    for (auto& t : terms) {
        t.c.canonicalize();
        t.a.canonicalize();
    }
    std::sort(terms.begin(), terms.end(), term_order);
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().a == t.a && terms_.back().k == t.k)
            terms_.back().c += t.c;
        else
            terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](const GTerm& t) { return t.c == 0; });
}

GExpr GExpr::constant(const Rational& c) {
    return GExpr({GTerm{c, 0, 0}});
}

GExpr GExpr::term(const Rational& c, unsigned k, const Rational& a) {
    return GExpr({GTerm{c, k, a}});
}

std::optional<Rational> GExpr::max_rate() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().a;
}

GExpr add(const GExpr& lhs, const GExpr& rhs) {
    std::vector<GTerm> terms = lhs.terms();
    terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
    return GExpr(std::move(terms));
}

GExpr scale(const GExpr& e, const Rational& c) {
    if (c == 0) return {};
    std::vector<GTerm> terms = e.terms();
    for (auto& t : terms) t.c *= c;
    return GExpr(std::move(terms));
}

GExpr multiply(const GExpr& lhs, const GExpr& rhs) {
    std::vector<GTerm> terms;
    terms.reserve(lhs.terms().size() * rhs.terms().size());
    for (const auto& l : lhs.terms())
        for (const auto& r : rhs.terms())
            terms.push_back(GTerm{l.c * r.c, l.k + r.k, l.a + r.a});
    return GExpr(std::move(terms));
}

GExpr delta_x(const GExpr& e) {
    std::vector<GTerm> terms;
    for (const auto& t : e.terms()) {
        if (t.k > 0) terms.push_back(GTerm{2 * t.k * t.c, t.k - 1, t.a});
        if (t.a != 0) terms.push_back(GTerm{2 * t.a * t.c, t.k, t.a});
    }
    return GExpr(std::move(terms));
}

Rational limit_at_zero(const GExpr& e) {
    Rational sum = 0;
    for (const auto& t : e.terms())
        if (t.k == 0) sum += t.c;
    return sum;
}

double evaluate(const GExpr& e, double x) {
    if (!(x >= 0)) fail(ErrorCode::Precondition, "evaluate: x must be >= 0");
    // long double accumulation: terms of different rates can cancel heavily
    const long double x2 = static_cast<long double>(x) * x;
    const long double logx = std::log(static_cast<long double>(x));
    long double sum = 0;
    for (const auto& t : e.terms()) {
        const long double c = to_long_double(t.c);
        const long double rate = to_long_double(t.a) * x2;
        if (rate > kMaxExp)
            fail(ErrorCode::Overflow, "evaluate: exponent a*x^2 exceeds double range");
        if (t.k == 0) {
            sum += c * std::exp(rate);
        } else if (x > 0) {
            const long double expo = rate + 2.0L * t.k * logx;
            if (expo > kMaxExp)
                fail(ErrorCode::Overflow, "evaluate: term magnitude exceeds double range");
            sum += c * std::exp(expo);
        }
    }
    const double out = static_cast<double>(sum);
    if (!std::isfinite(out)) fail(ErrorCode::Overflow, "evaluate: result exceeds double range");
    return out;
}

double log_magnitude(const GExpr& e, double x) {
    if (!(x >= 0)) fail(ErrorCode::Precondition, "log_magnitude: x must be >= 0");
    struct Part {
        double log_abs;
        int sign;
    };
    std::vector<Part> parts;
    const double x2 = x * x;
    for (const auto& t : e.terms()) {
        if (t.k > 0 && x == 0) continue;
        const double logc = std::log(std::abs(to_double(t.c)));
        const double lx = t.k > 0 ? 2.0 * t.k * std::log(x) : 0.0;
        parts.push_back({logc + lx + to_double(t.a) * x2, t.c > 0 ? 1 : -1});
    }
    if (parts.empty()) return -std::numeric_limits<double>::infinity();
    double top = parts.front().log_abs;
    for (const auto& p : parts) top = std::max(top, p.log_abs);
    double acc = 0;
    for (const auto& p : parts) acc += p.sign * std::exp(p.log_abs - top);
    if (acc == 0) return -std::numeric_limits<double>::infinity();
    return top + std::log(std::abs(acc));
}

CompiledGExpr::CompiledGExpr(const GExpr& e) {
    terms_.reserve(e.terms().size());
    for (const auto& t : e.terms())
        terms_.push_back({to_long_double(t.c), t.k, to_long_double(t.a)});
}

long double CompiledGExpr::operator()(long double x) const {
    const long double x2 = x * x;
    const long double logx = std::log(x);
    long double sum = 0;
    for (const auto& t : terms_) {
        long double expo = t.a * x2;
        if (t.k > 0) {
            if (x == 0) continue;
            expo += 2.0L * t.k * logx;
        }
        if (expo > kMaxExpLong)
            fail(ErrorCode::Overflow, "evaluate: term magnitude exceeds extended range");
        sum += t.c * std::exp(expo);
    }
    return sum;
}

std::ostream& operator<<(std::ostream& os, const GExpr& e) {
    if (e.is_zero()) return os << "0";
    bool first = true;
    for (const auto& t : e.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c << ")";
        if (t.k > 0) os << "*x^" << 2 * t.k;
        if (t.a != 0) os << "*exp((" << t.a << ")*x^2)";
    }
    return os;
}

}  // namespace l2t
