#pragma once

#include "gexpr.hpp"
#include "rational.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace l2t {

/// c·(σ−a)^(−m) with σ = s². m = 0 is a σ-independent constant (impulse
/// content); such terms are stored with a = 0.
struct STerm {
    Rational c;
    Rational a;
    unsigned m = 1;

    friend bool operator==(const STerm&, const STerm&) = default;
};

/// Transform-domain expression: a proper rational function of σ in
/// partial-fraction form plus an optional constant.
///
/// Canonical: sorted by (a, m), unique (a, m), no zero coefficients. The
/// validity region σ > region() is metadata and does not take part in
/// equality.
class SExpr {
public:
    SExpr() = default;
    explicit SExpr(std::vector<STerm> terms, std::optional<Rational> region = std::nullopt);

    static SExpr constant(const Rational& c);
    static SExpr pole(const Rational& c, const Rational& a, unsigned m);

    const std::vector<STerm>& terms() const noexcept { return terms_; }
    const std::optional<Rational>& region() const noexcept { return region_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool has_impulse_content() const noexcept;
    /// Coefficient of the m = 0 term (zero when absent).
    Rational constant_part() const;

    friend bool operator==(const SExpr& l, const SExpr& r) { return l.terms_ == r.terms_; }

private:
    std::vector<STerm> terms_;
    std::optional<Rational> region_;
};

/// A factor (σ−a)^(−m) of a numeratorless product.
struct PoleFactor {
    Rational a;
    unsigned m = 1;
};

/// L2 transform, term-wise c·x^(2k)·e^(ax²) ↦ c·k!/2·(σ−a)^(−(k+1)).
/// The result carries region max a.
SExpr forward(const GExpr& e);

/// Inverse transform, term-wise c·(σ−a)^(−m) ↦ 2c·x^(2(m−1))·e^(ax²)/(m−1)!.
/// Throws Error{ImpulseContent} if an m = 0 term is present.
GExpr inverse(const SExpr& s);

/// δ_s = (1/s)·d/ds = 2·d/dσ.
SExpr delta_s(const SExpr& s);

SExpr add(const SExpr& lhs, const SExpr& rhs);
SExpr scale(const SExpr& s, const Rational& c);

/// Multiplication by σ. Throws Error{Precondition} on impulse content, whose
/// image would be a polynomial in σ.
SExpr mul_sigma(const SExpr& s);

SExpr multiply(const SExpr& lhs, const SExpr& rhs);

inline SExpr operator+(const SExpr& l, const SExpr& r) { return add(l, r); }
inline SExpr operator-(const SExpr& l, const SExpr& r) { return add(l, scale(r, -1)); }
inline SExpr operator*(const SExpr& l, const SExpr& r) { return multiply(l, r); }

/// Partial-fraction form of Π (σ−a_i)^(−m_i). Factors sharing a pole are
/// merged. Coefficients come from Taylor expansion of the cofactor at each
/// pole, so they are exact. An empty product is the constant 1.
SExpr partial_fractions(const std::vector<PoleFactor>& factors);

/// Value at σ (σ must differ from every pole).
double evaluate(const SExpr& s, double sigma);

std::ostream& operator<<(std::ostream& os, const SExpr& s);

}  // namespace l2t
