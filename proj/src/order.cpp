#include "order.hpp"

#include "error.hpp"

#include <cmath>

namespace l2t {

const char* tristate_name(Tristate v) noexcept {
    switch (v) {
        case Tristate::No: return "false";
        case Tristate::Yes: return "true";
        case Tristate::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

void check_samples(std::span<const double> xs) {
    if (xs.size() < 8) fail(ErrorCode::Precondition, "growth sampling needs at least 8 points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) fail(ErrorCode::Precondition, "growth samples must be strictly increasing");
}

}  // namespace

GrowthReport classify_exact(const GExpr& e) {
    GrowthReport report;
    const Rational rate = e.max_rate().value_or(Rational(0));
    report.exact_rate = rate;
    report.is_exp_squared_order = rate < 1 ? Tristate::Yes : Tristate::No;
    report.is_exponential_order = rate <= 0 ? Tristate::Yes : Tristate::No;
    return report;
}

GrowthReport estimate_rate(const RealFunction& f, std::span<const double> xs) {
    check_samples(xs);
    const double midpoint = 0.5 * (xs.front() + xs.back());
    std::vector<double> X;
    std::vector<double> Y;
    for (double x : xs) {
        const double v = f(x);
        if (!(v > 0)) fail(ErrorCode::NonPositiveSample, "estimate_rate: f(x) <= 0 at x = " + std::to_string(x));
        if (x < midpoint || v < 1e-300) continue;
        X.push_back(x * x);
        Y.push_back(std::log(v));
    }

    GrowthReport report;
    if (X.size() < 2) return report;
    const double n = static_cast<double>(X.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        mx += X[i];
        my += Y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sxx += (X[i] - mx) * (X[i] - mx);
        sxy += (X[i] - mx) * (Y[i] - my);
        syy += (Y[i] - my) * (Y[i] - my);
    }
    const double slope = sxy / sxx;
    double ss_res = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double r = Y[i] - (my + slope * (X[i] - mx));
        ss_res += r * r;
    }
    // A flat log-profile is a perfect (zero-slope) fit.
    const double r2 = syy <= 1e-24 * n ? 1.0 : 1.0 - ss_res / syy;
    report.estimated_rate = slope;
    report.r_squared = r2;
    if (r2 < kMinFitQuality) return report;

    if (slope < 0.98)
        report.is_exp_squared_order = Tristate::Yes;
    else if (slope > 1.02)
        report.is_exp_squared_order = Tristate::No;
    if (slope <= 0.02)
        report.is_exponential_order = Tristate::Yes;
    else if (slope >= 0.25)
        report.is_exponential_order = Tristate::No;
    return report;
}

bool check_bound(const RealFunction& f, const RealFunction& g, std::span<const double> xs) {
    check_samples(xs);
    for (double x : xs)
        if (!(f(x) <= g(x) * (1 + 1e-12))) return false;
    return true;
}

std::vector<double> linspace(double lo, double hi, unsigned n) {
    if (n < 2) fail(ErrorCode::Precondition, "linspace: need at least 2 points");
    std::vector<double> out(n);
    for (unsigned i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    return out;
}

}  // namespace l2t
