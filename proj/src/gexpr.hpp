#pragma once

#include "rational.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace l2t {

/// One term c·x^(2k)·e^(a·x²) of the Gaussian-polynomial algebra.
struct GTerm {
    Rational c;
    unsigned k = 0;
    Rational a;

    friend bool operator==(const GTerm&, const GTerm&) = default;
};

/// Exact element of the algebra spanned by x^(2k)·e^(a·x²) on [0, ∞).
///
/// Always canonical: terms sorted by (a, k), no repeated (a, k) pair, no zero
/// coefficient. The zero expression has no terms.
class GExpr {
public:
    GExpr() = default;
    explicit GExpr(std::vector<GTerm> terms);

    static GExpr constant(const Rational& c);
    static GExpr term(const Rational& c, unsigned k, const Rational& a);

    const std::vector<GTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Largest Gaussian rate, absent for the zero expression.
    std::optional<Rational> max_rate() const;

    friend bool operator==(const GExpr&, const GExpr&) = default;

private:
    std::vector<GTerm> terms_;
};

GExpr canonicalize(std::vector<GTerm> terms);

GExpr add(const GExpr& lhs, const GExpr& rhs);
GExpr scale(const GExpr& e, const Rational& c);
GExpr multiply(const GExpr& lhs, const GExpr& rhs);

inline GExpr operator+(const GExpr& l, const GExpr& r) { return add(l, r); }
inline GExpr operator-(const GExpr& l, const GExpr& r) { return add(l, scale(r, -1)); }
inline GExpr operator*(const GExpr& l, const GExpr& r) { return multiply(l, r); }

/// (1/x)·d/dx, term-wise:
/// c·x^(2k)·e^(ax²) ↦ 2kc·x^(2k−2)·e^(ax²) + 2ac·x^(2k)·e^(ax²).
GExpr delta_x(const GExpr& e);

/// f(0⁺): the sum of coefficients of the k = 0 terms.
Rational limit_at_zero(const GExpr& e);

/// Pointwise value for x ≥ 0. Throws Error{Overflow} if a term's exponent
/// leaves the double range, Error{Precondition} for x < 0.
double evaluate(const GExpr& e, double x);

/// log|e(x)| computed without forming e(x); -inf when e(x) = 0.
double log_magnitude(const GExpr& e, double x);

/// Floating-point snapshot of a GExpr for repeated evaluation in extended
/// precision (used by series solutions and finite-difference oracles).
class CompiledGExpr {
public:
    CompiledGExpr() = default;
    explicit CompiledGExpr(const GExpr& e);

    long double operator()(long double x) const;

private:
    struct Term {
        long double c;
        unsigned k;
        long double a;
    };
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const GExpr& e);

}  // namespace l2t
