#pragma once

#include "gexpr.hpp"
#include "quadrature.hpp"

namespace l2t {

/// f ⋆ g computed as inverse(forward(f)·forward(g)). Exact.
GExpr convolve_symbolic(const GExpr& f, const GExpr& g);

/// (f ⋆ g)(t) = ∫_0^t x·f(√(t²−x²))·g(x) dx by adaptive quadrature.
/// The last 2⁻²⁰ of the interval is integrated in w = t² − x².
double convolve_numeric(const RealFunction& f, const RealFunction& g, double t, const QuadratureConfig& cfg = {});

/// n-fold ⋆-power. Throws Error{Precondition} for n = 0.
GExpr star_power(const GExpr& f, unsigned n);

}  // namespace l2t
