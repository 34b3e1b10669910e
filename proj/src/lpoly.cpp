#include "lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace l2t {

LPoly::LPoly(std::map<unsigned, Rational> coefficients) : coeffs_(std::move(coefficients)) {
    std::erase_if(coeffs_, [](auto& kv) {
        kv.second.canonicalize();
        return kv.second == 0;
    });
}

LPoly LPoly::constant(const Rational& c) { return LPoly({{0u, c}}); }

LPoly LPoly::monomial(const Rational& c, unsigned degree) { return LPoly({{degree, c}}); }

Rational LPoly::coefficient(unsigned degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

long double LPoly::evaluate(long double t) const {
    long double sum = 0;
    for (const auto& [d, c] : coeffs_) sum += static_cast<long double>(c.get_d()) * std::pow(t, static_cast<long double>(d));
    return sum;
}

LPoly LPoly::derivative() const {
    std::map<unsigned, Rational> out;
    for (const auto& [d, c] : coeffs_)
        if (d > 0) out[d - 1] = c * d;
    return LPoly(std::move(out));
}

LPoly LPoly::antiderivative() const {
    std::map<unsigned, Rational> out;
    for (const auto& [d, c] : coeffs_) out[d + 1] = c / (d + 1);
    return LPoly(std::move(out));
}

double LPoly::abs_bound(double lo, double hi) const {
    const double reach = std::max(std::abs(lo), std::abs(hi));
    double bound = 0;
    for (const auto& [d, c] : coeffs_) bound += std::abs(c.get_d()) * std::pow(reach, d);
    return bound;
}

LPoly operator+(const LPoly& l, const LPoly& r) {
    auto out = l.coefficients();
    for (const auto& [d, c] : r.coefficients()) out[d] += c;
    return LPoly(std::move(out));
}

LPoly operator-(const LPoly& l, const LPoly& r) { return l + scale(r, -1); }

LPoly operator*(const LPoly& l, const LPoly& r) {
    std::map<unsigned, Rational> out;
    for (const auto& [dl, cl] : l.coefficients())
        for (const auto& [dr, cr] : r.coefficients()) out[dl + dr] += cl * cr;
    return LPoly(std::move(out));
}

LPoly scale(const LPoly& p, const Rational& c) {
    auto out = p.coefficients();
    for (auto& [d, v] : out) v *= c;
    return LPoly(std::move(out));
}

LPoly power(const LPoly& p, unsigned n) {
    LPoly acc = LPoly::constant(1);
    for (unsigned i = 0; i < n; ++i) acc = acc * p;
    return acc;
}

std::ostream& operator<<(std::ostream& os, const LPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [d, c] : p.coefficients()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (d > 0) os << "*t^" << d;
    }
    return os;
}

}  // namespace l2t
