#include "convolution.hpp"

#include "error.hpp"
#include "sexpr.hpp"

#include <cmath>

namespace l2t {

GExpr convolve_symbolic(const GExpr& f, const GExpr& g) {
    return inverse(multiply(forward(f), forward(g)));
}

double convolve_numeric(const RealFunction& f, const RealFunction& g, double t, const QuadratureConfig& cfg) {
    if (!(t >= 0)) fail(ErrorCode::Precondition, "convolve_numeric: t must be >= 0");
    if (t == 0) return 0;
    const double split = t * (1.0 - std::ldexp(1.0, -20));
    const double head = integrate_adaptive(
        [&](double x) { return x * f(std::sqrt((t - x) * (t + x))) * g(x); }, 0, split, cfg);
    // x dx = −dw/2 with w = t² − x².
    const double w_max = (t - split) * (t + split);
    const double tail = integrate_adaptive(
        [&](double w) { return 0.5 * f(std::sqrt(w)) * g(std::sqrt((t - std::sqrt(w)) * (t + std::sqrt(w)))); },
        0, w_max, cfg);
    return head + tail;
}

GExpr star_power(const GExpr& f, unsigned n) {
    if (n == 0) fail(ErrorCode::Precondition, "star_power: n must be >= 1");
    const SExpr base = forward(f);
    SExpr acc = base;
    for (unsigned i = 1; i < n; ++i) acc = multiply(acc, base);
    return inverse(acc);
}

}  // namespace l2t
