#pragma once

#include "gexpr.hpp"
#include "lpoly.hpp"

#include <string>
#include <vector>

namespace l2t {

enum class Family { A, B, C, D };
enum class SignConvention { PaperLiteral, Derived };

const char* family_name(Family f) noexcept;
const char* convention_name(SignConvention c) noexcept;

/// Which equation a solution (or residual) refers to. The ratio is M = f/g
/// for families B and D and H = g/f for family C; family A has none.
struct PDEProblem {
    Family family = Family::A;
    LPoly ratio;
    SignConvention convention = SignConvention::Derived;

    /// Normalized left-hand side that residuals evaluate.
    std::string equation() const;
};

/// u together with the exact derivatives the residuals need. dx_u is
/// δ_x u = u_x/x and dx_u_t is δ_x u_t = u_xt/x.
struct Derivatives {
    long double u = 0;
    long double u_t = 0;
    long double dx_u = 0;
    long double dx_u_t = 0;
};

/// coefficient · T(t)^n · profile(x), where T is t⁻² (family A) or the
/// antiderivative of the ratio (families B, C).
struct SeriesTerm {
    unsigned n = 0;
    Rational coefficient;
    GExpr profile;
};

/// Truncated series solution u = P(t)·(unit + Σ_n term_n).
///
/// P is 1 (families A, C), e^(−𝓜) (family B derived, family D) or the
/// truncated second series of family B's printed solution.
class SeriesSolution {
public:
    enum class Prefactor { One, ExpNegAntiderivative, HalfExpSeries };
    enum class TimeVariable { InverseTSquared, Antiderivative };

    SeriesSolution(PDEProblem problem, unsigned truncation, Prefactor prefactor, TimeVariable time_variable,
                   Rational unit, std::vector<SeriesTerm> terms);

    const PDEProblem& problem() const noexcept { return problem_; }
    unsigned truncation() const noexcept { return truncation_; }
    const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
    const Rational& unit() const noexcept { return unit_; }
    Prefactor prefactor() const noexcept { return prefactor_; }
    TimeVariable time_variable() const noexcept { return time_variable_; }
    /// ∫_0^t of the ratio.
    const LPoly& antiderivative() const noexcept { return antiderivative_; }

    /// True when the leading constant stands for a σ-constant in the
    /// transform domain, which inverse() would reject.
    bool has_impulse_content() const noexcept { return unit_ != 0; }

    /// Remarks about side conditions or readings of the equation.
    const std::vector<std::string>& notes() const noexcept { return notes_; }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }

    Derivatives evaluate(long double x, long double t) const;
    long double value(long double x, long double t) const;

private:
    struct CompiledTerm {
        unsigned n;
        long double coefficient;
        CompiledGExpr profile;
        CompiledGExpr delta_profile;
    };

    PDEProblem problem_;
    unsigned truncation_;
    Prefactor prefactor_;
    TimeVariable time_variable_;
    Rational unit_;
    std::vector<SeriesTerm> terms_;
    LPoly antiderivative_;
    std::vector<CompiledTerm> compiled_;
    std::vector<std::string> notes_;
};

/// u = Σ_{n≤N} (1/2)^n·t^(−2n)·x^(2n)/(n!)² for t³u_tx + 2xu = 0.
SeriesSolution solve_family_A(unsigned N);

/// f·u + f·δ_x u + g·δ_x u_t = 0 with M = f/g. Derived convention:
/// u = e^(−𝓜)·Σ (−𝓜/2)^n·x^(2n)/(n!)². Paper-literal: the printed double
/// series Σ 𝓜^n x^(2n)/((n!)²2^(n−1)) · Σ 𝓜^n/(2·n!).
SeriesSolution solve_family_B(const LPoly& M, unsigned N, SignConvention convention = SignConvention::Derived);

/// g·u − f·u_t + f·δ_x u_t = 0 with H = g/f:
/// u = 1 + Σ_{n=1..N} (±𝓗)^n/n! · (e^(x²/2))^(⋆n), minus sign for the
/// derived convention.
SeriesSolution solve_family_C(const LPoly& H, unsigned N, SignConvention convention = SignConvention::Derived);

/// f·u + f·δ_x u + g·u_t + g·δ_x u_t = 0 with M = f/g: u = e^(−𝓜(t)).
SeriesSolution solve_family_D(const LPoly& M, unsigned N = 1);

SeriesSolution solve(const PDEProblem& problem, unsigned N);

struct GridPoint {
    double x;
    double t;
};

/// nx × nt points, log-spaced in both coordinates.
std::vector<GridPoint> log_grid(double x0, double x1, unsigned nx, double t0, double t1, unsigned nt);
/// 10×10 over [0.1, 2]×[0.5, 2].
std::vector<GridPoint> default_grid();

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kFiniteDifferenceAgreement = 1e-4;

/// Left-hand side of p's equation using u's exact term-wise derivatives.
long double residual_exact(const PDEProblem& p, const SeriesSolution& u, long double x, long double t);
/// Same, with all derivatives replaced by central differences of u's values.
long double residual_finite_difference(const PDEProblem& p, const SeriesSolution& u, long double x, long double t,
                                       long double h = kFiniteDifferenceStep);

struct ResidualPoint {
    double x;
    double t;
    double residual;
    double fd_residual;
};

struct ResidualReport {
    PDEProblem problem;
    unsigned truncation = 0;
    std::vector<ResidualPoint> points;
    double max_abs = 0;
    double max_fd_disagreement = 0;
    bool fd_agrees = true;
    double truncation_bound = 0;
    bool has_impulse_content = false;
    std::vector<std::string> notes;
};

/// Throws Error{GridDomain} for any point with x ≤ 0 or t ≤ 0.
ResidualReport residual(const PDEProblem& p, const SeriesSolution& u, const std::vector<GridPoint>& grid);

/// Upper bound on Σ_{n>N} |term_n| over [0, x_max] × [t_lo, t_hi] by
/// ratio-test majorization. Family A requires t_lo > 0.
double truncation_bound(const SeriesSolution& u, double x_max, double t_lo, double t_hi);

/// Coefficient-wise check of the transformed time ODE on the truncated
/// transform-domain series (families B derived and C).
struct TransformOdeCheck {
    bool exact = true;
    unsigned orders_checked = 0;
    std::vector<unsigned> failing_orders;
};

TransformOdeCheck check_transform_ode(const PDEProblem& p, unsigned N);

}  // namespace l2t
