#pragma once

#include "gexpr.hpp"
#include "quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace l2t {

enum class Tristate { No, Yes, Unknown };

const char* tristate_name(Tristate v) noexcept;

struct GrowthReport {
    std::optional<Rational> exact_rate;
    std::optional<double> estimated_rate;
    std::optional<double> r_squared;
    Tristate is_exponential_order = Tristate::Unknown;
    Tristate is_exp_squared_order = Tristate::Unknown;
};

inline constexpr double kMinFitQuality = 0.999;

/// Exact growth class of an algebra element: exp-squared order iff max a < 1,
/// exponential order iff max a ≤ 0. The zero expression has rate 0.
GrowthReport classify_exact(const GExpr& e);

/// Least-squares slope of log f against x² over the upper half of the sample
/// range. Samples with f(x) < 1e−300 are skipped; classification is Unknown
/// when R² < kMinFitQuality or the slope sits near a class boundary.
/// Throws Error{NonPositiveSample} if f(x) ≤ 0 at any sample and
/// Error{Precondition} for fewer than 8 or non-increasing samples.
GrowthReport estimate_rate(const RealFunction& f, std::span<const double> xs);

/// True iff f(x) ≤ g(x)·(1 + 1e−12) at every sample.
bool check_bound(const RealFunction& f, const RealFunction& g, std::span<const double> xs);

std::vector<double> linspace(double lo, double hi, unsigned n);

}  // namespace l2t
