#pragma once

#include "rational.hpp"

#include <iosfwd>
#include <map>

namespace l2t {

/// Exact polynomial in t. Zero coefficients are never stored.
class LPoly {
public:
    LPoly() = default;
    explicit LPoly(std::map<unsigned, Rational> coefficients);

    static LPoly constant(const Rational& c);
    static LPoly monomial(const Rational& c, unsigned degree);

    const std::map<unsigned, Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Rational coefficient(unsigned degree) const;

    long double evaluate(long double t) const;

    LPoly derivative() const;
    /// ∫_0^t p(w) dw.
    LPoly antiderivative() const;

    /// Upper bound on |p(t)| for t in [lo, hi].
    double abs_bound(double lo, double hi) const;

    friend bool operator==(const LPoly&, const LPoly&) = default;

private:
    std::map<unsigned, Rational> coeffs_;
};

LPoly operator+(const LPoly& l, const LPoly& r);
LPoly operator-(const LPoly& l, const LPoly& r);
LPoly operator*(const LPoly& l, const LPoly& r);
LPoly scale(const LPoly& p, const Rational& c);
LPoly power(const LPoly& p, unsigned n);

std::ostream& operator<<(std::ostream& os, const LPoly& p);

}  // namespace l2t
