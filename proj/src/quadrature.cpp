#include "quadrature.hpp"

#include "error.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace l2t {

namespace {

// Kronrod 15-point abscissae on [-1, 1] (positive half, descending) with
// the embedded 7-point Gauss weights at the odd positions.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value, error;
    int depth;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double lo, double hi, int depth) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return Panel{lo, hi, kronrod, std::abs(kronrod - gauss), depth};
}

// log of C·Y^K·e^(−Y)/β^(K+1), Y = βX²; an upper bound on the tail beyond X
// whenever X ≥ 1 and Y ≥ 2(K+1).
double log_tail_bound(const GrowthEnvelope& env, double beta, double x) {
    const double y = beta * x * x;
    const double k = env.half_degree;
    return std::log(env.scale) + k * std::log(y) - y - (k + 1) * std::log(beta);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0) || !(tail_epsilon > 0) || max_refinements < 1)
        fail(ErrorCode::Precondition, "quadrature config: tolerances must be > 0 and max_refinements >= 1");
}

GrowthEnvelope envelope_of(const GExpr& e) {
    GrowthEnvelope env;
    env.scale = 0;
    if (e.is_zero()) {
        env.scale = 1;
        return env;
    }
    env.rate = to_double(*e.max_rate());
    for (const auto& t : e.terms()) {
        env.scale += std::abs(to_double(t.c));
        env.half_degree = std::max(env.half_degree, t.k);
    }
    return env;
}

double integrate_adaptive(const RealFunction& f, double lo, double hi, const QuadratureConfig& cfg) {
    cfg.validate();
    if (lo == hi) return 0;
    std::priority_queue<Panel> panels;
    panels.push(gauss_kronrod(f, lo, hi, 0));
    double value = panels.top().value;
    double error = panels.top().error;
    while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
        Panel worst = panels.top();
        if (worst.depth >= cfg.max_refinements)
            fail(ErrorCode::QuadratureFailure, "adaptive quadrature: refinement budget exhausted");
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
        Panel right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (!std::isfinite(value))
            fail(ErrorCode::QuadratureFailure, "adaptive quadrature: non-finite integrand");
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to drop the drift accumulated by the incremental updates.
    value = 0;
    while (!panels.empty()) {
        value += panels.top().value;
        panels.pop();
    }
    return value;
}

double l2_cutoff(const GrowthEnvelope& env, double sigma, double tail_epsilon) {
    const double beta = sigma - env.rate;
    if (!(beta > 0)) fail(ErrorCode::DivergentIntegral, "l2 transform diverges: s^2 <= growth rate");
    const double target = std::log(tail_epsilon);
    const double floor_x = std::max(1.0, std::sqrt(2.0 * (env.half_degree + 1) / beta));
    double hi = floor_x;
    while (log_tail_bound(env, beta, hi) >= target) hi *= 2;
    double lo = std::max(floor_x, hi / 2);
    if (log_tail_bound(env, beta, lo) < target) return lo;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_tail_bound(env, beta, mid) < target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

double integral_in_sigma(const GExpr& e, double sigma, double lo, double hi, const QuadratureConfig& cfg) {
    struct Term {
        double c, a;
        unsigned k;
    };
    std::vector<Term> terms;
    for (const auto& t : e.terms()) terms.push_back({to_double(t.c), to_double(t.a), t.k});
    // Each term is folded into one exponential so e^(ax²) never overflows on
    // its own.
    auto integrand = [&](double x) {
        if (x <= 0) return 0.0;
        const double lx = std::log(x);
        double sum = 0;
        for (const auto& t : terms) sum += t.c * std::exp((t.a - sigma) * x * x + (2.0 * t.k + 1) * lx);
        return sum;
    };
    return integrate_adaptive(integrand, lo, hi, cfg);
}

}  // namespace

double l2_integral(const GExpr& e, double s, double lo, double hi, const QuadratureConfig& cfg) {
    return integral_in_sigma(e, s * s, lo, hi, cfg);
}

double l2_quadrature(const GExpr& e, double s, const QuadratureConfig& cfg) {
    if (!(s > 0)) fail(ErrorCode::Precondition, "l2_quadrature: s must be > 0");
    return l2_quadrature_sigma(e, s * s, cfg);
}

double l2_quadrature_sigma(const GExpr& e, double sigma, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(sigma)) fail(ErrorCode::Precondition, "l2_quadrature: sigma must be finite");
    if (e.is_zero()) return 0;
    const double cutoff = l2_cutoff(envelope_of(e), sigma, cfg.tail_epsilon);
    return integral_in_sigma(e, sigma, 0, cutoff, cfg);
}

double l2_quadrature(const RealFunction& f, const GrowthEnvelope& env, double s, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(s > 0)) fail(ErrorCode::Precondition, "l2_quadrature: s must be > 0");
    const double sigma = s * s;
    const double cutoff = l2_cutoff(env, sigma, cfg.tail_epsilon);
    return integrate_adaptive([&](double x) { return x * std::exp(-sigma * x * x) * f(x); }, 0, cutoff, cfg);
}

}  // namespace l2t
