#pragma once

#include "gexpr.hpp"

#include <functional>

namespace l2t {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_refinements = 60;  // maximum bisection depth of any subinterval
    double tail_epsilon = 1e-16;

    /// Throws Error{Precondition} unless every field is strictly positive.
    void validate() const;
};

using RealFunction = std::function<double(double)>;

/// Declared growth of an evaluator: |f(x)| ≤ scale·x^(2·half_degree)·e^(rate·x²)
/// for x ≥ 1.
struct GrowthEnvelope {
    double rate = 0;
    double scale = 1;
    unsigned half_degree = 0;
};

GrowthEnvelope envelope_of(const GExpr& e);

/// Globally adaptive Gauss–Kronrod (7/15) integration of f over [lo, hi].
/// Throws Error{QuadratureFailure} when a subinterval needing refinement is
/// already at cfg.max_refinements depth.
double integrate_adaptive(const RealFunction& f, double lo, double hi, const QuadratureConfig& cfg = {});

/// Smallest cutoff X (to bisection accuracy) for which the analytic tail
/// bound of ∫_X^∞ x·e^(−σx²)·envelope(x) dx lies below cfg.tail_epsilon.
double l2_cutoff(const GrowthEnvelope& env, double sigma, double tail_epsilon);

/// ∫_0^∞ x·e^(−s²x²)·f(x) dx, truncated at l2_cutoff.
/// Throws Error{DivergentIntegral} if s² ≤ max a.
double l2_quadrature(const GExpr& e, double s, const QuadratureConfig& cfg = {});

/// Same in σ = s², which may be zero or negative as long as σ > max a.
double l2_quadrature_sigma(const GExpr& e, double sigma, const QuadratureConfig& cfg = {});

/// Same for a sampled function with declared envelope.
double l2_quadrature(const RealFunction& f, const GrowthEnvelope& env, double s,
                     const QuadratureConfig& cfg = {});

/// ∫_lo^hi x·e^(−s²x²)·e(x) dx with no tail handling.
double l2_integral(const GExpr& e, double s, double lo, double hi, const QuadratureConfig& cfg = {});

}  // namespace l2t
