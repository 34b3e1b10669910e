#include "sexpr.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace l2t {

namespace {

std::optional<Rational> max_region(const std::optional<Rational>& l, const std::optional<Rational>& r) {
    if (!l) return r;
    if (!r) return l;
    return std::max(*l, *r);
}

// C(n, r) as an exact rational.
Rational binomial(unsigned n, unsigned r) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, r);
    return Rational(b);
}

}  // namespace

SExpr::SExpr(std::vector<STerm> terms, std::optional<Rational> region) : region_(std::move(region)) {
    for (auto& t : terms) {
        t.c.canonicalize();
        t.a.canonicalize();
        if (t.m == 0) t.a = 0;
    }
    std::sort(terms.begin(), terms.end(), [](const STerm& l, const STerm& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.m < r.m;
    });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().a == t.a && terms_.back().m == t.m)
            terms_.back().c += t.c;
        else
            terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](const STerm& t) { return t.c == 0; });
}

SExpr SExpr::constant(const Rational& c) {
    return SExpr({STerm{c, 0, 0}});
}

SExpr SExpr::pole(const Rational& c, const Rational& a, unsigned m) {
    return SExpr({STerm{c, a, m}});
}

bool SExpr::has_impulse_content() const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [](const STerm& t) { return t.m == 0; });
}

Rational SExpr::constant_part() const {
    for (const auto& t : terms_)
        if (t.m == 0) return t.c;
    return 0;
}

SExpr forward(const GExpr& e) {
    std::vector<STerm> terms;
    terms.reserve(e.terms().size());
    for (const auto& t : e.terms())
        terms.push_back(STerm{t.c * factorial(t.k) / 2, t.a, t.k + 1});
    return SExpr(std::move(terms), e.max_rate());
}

GExpr inverse(const SExpr& s) {
    std::vector<GTerm> terms;
    terms.reserve(s.terms().size());
    for (const auto& t : s.terms()) {
        if (t.m == 0)
            fail(ErrorCode::ImpulseContent,
                 "inverse: sigma-constant term " + to_string(t.c) + " has no function-valued inverse");
        terms.push_back(GTerm{2 * t.c / factorial(t.m - 1), t.m - 1, t.a});
    }
    return GExpr(std::move(terms));
}

SExpr delta_s(const SExpr& s) {
    std::vector<STerm> terms;
    for (const auto& t : s.terms())
        if (t.m > 0) terms.push_back(STerm{Rational(t.c * -2 * static_cast<long>(t.m)), t.a, t.m + 1});
    return SExpr(std::move(terms), s.region());
}

SExpr add(const SExpr& lhs, const SExpr& rhs) {
    std::vector<STerm> terms = lhs.terms();
    terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
    return SExpr(std::move(terms), max_region(lhs.region(), rhs.region()));
}

SExpr scale(const SExpr& s, const Rational& c) {
    std::vector<STerm> terms = s.terms();
    for (auto& t : terms) t.c *= c;
    return SExpr(std::move(terms), s.region());
}

SExpr mul_sigma(const SExpr& s) {
    std::vector<STerm> terms;
    for (const auto& t : s.terms()) {
        if (t.m == 0)
            fail(ErrorCode::Precondition, "mul_sigma: constant content would become polynomial in sigma");
        // σ·(σ−a)^(−m) = (σ−a)^(−(m−1)) + a·(σ−a)^(−m)
        terms.push_back(STerm{t.c, t.a, t.m - 1});
        if (t.a != 0) terms.push_back(STerm{t.a * t.c, t.a, t.m});
    }
    return SExpr(std::move(terms), s.region());
}

SExpr partial_fractions(const std::vector<PoleFactor>& factors) {
    std::map<Rational, unsigned> poles;
    for (const auto& f : factors)
        if (f.m > 0) poles[f.a] += f.m;
    if (poles.empty()) return SExpr::constant(1);

    std::vector<STerm> terms;
    for (const auto& [ai, mi] : poles) {
        // Taylor coefficients in τ = σ − a_i of Π_{j≠i} (d_j + τ)^(−m_j),
        // d_j = a_i − a_j, truncated to degree m_i − 1.
        std::vector<Rational> series(mi, Rational(0));
        series[0] = 1;
        for (const auto& [aj, mj] : poles) {
            if (aj == ai) continue;
            const Rational d = ai - aj;
            std::vector<Rational> factor(mi);
            // (d + τ)^(−m) = Σ_r (−1)^r C(m+r−1, r) d^(−m−r) τ^r
            for (unsigned r = 0; r < mi; ++r) {
                Rational coef = binomial(mj + r - 1, r) / pow(d, mj + r);
                factor[r] = (r % 2 == 0) ? coef : Rational(-coef);
            }
            std::vector<Rational> product(mi, Rational(0));
            for (unsigned p = 0; p < mi; ++p)
                for (unsigned q = 0; p + q < mi; ++q) product[p + q] += series[p] * factor[q];
            series = std::move(product);
        }
        for (unsigned r = 0; r < mi; ++r) terms.push_back(STerm{series[r], ai, mi - r});
    }
    return SExpr(std::move(terms));
}

SExpr multiply(const SExpr& lhs, const SExpr& rhs) {
    std::vector<STerm> terms;
    for (const auto& l : lhs.terms()) {
        for (const auto& r : rhs.terms()) {
            const Rational c = l.c * r.c;
            if (l.m == 0 || r.m == 0) {
                const STerm& other = l.m == 0 ? r : l;
                terms.push_back(STerm{c, other.a, other.m});
                continue;
            }
            const SExpr split = partial_fractions({{l.a, l.m}, {r.a, r.m}});
            for (const auto& t : split.terms()) terms.push_back(STerm{c * t.c, t.a, t.m});
        }
    }
    return SExpr(std::move(terms), max_region(lhs.region(), rhs.region()));
}

double evaluate(const SExpr& s, double sigma) {
    double sum = 0;
    for (const auto& t : s.terms())
        sum += to_double(t.c) * std::pow(sigma - to_double(t.a), -static_cast<double>(t.m));
    return sum;
}

std::ostream& operator<<(std::ostream& os, const SExpr& s) {
    if (s.is_zero()) return os << "0";
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c << ")";
        if (t.m > 0) os << "*(sigma-(" << t.a << "))^-" << t.m;
    }
    return os;
}

}  // namespace l2t
