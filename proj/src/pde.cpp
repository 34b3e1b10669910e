#include "pde.hpp"

#include "convolution.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace l2t {

const char* family_name(Family f) noexcept {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
    }
    return "?";
}

const char* convention_name(SignConvention c) noexcept {
    return c == SignConvention::PaperLiteral ? "paper" : "derived";
}

std::string PDEProblem::equation() const {
    switch (family) {
        case Family::A: return "t^3*u_tx + 2*x*u = 0";
        case Family::B: return "M(t)*u + M(t)*(1/x)*u_x + (1/x)*u_xt = 0  (M = f/g, g = 1)";
        case Family::C: return "H(t)*u - u_t + (1/x)*u_xt = 0  (H = g/f, f = 1)";
        case Family::D: return "M(t)*u + M(t)*(1/x)*u_x + u_t + (1/x)*u_xt = 0  (M = f/g, g = 1)";
    }
    return {};
}

SeriesSolution::SeriesSolution(PDEProblem problem, unsigned truncation, Prefactor prefactor,
                               TimeVariable time_variable, Rational unit, std::vector<SeriesTerm> terms)
    : problem_(std::move(problem)),
      truncation_(truncation),
      prefactor_(prefactor),
      time_variable_(time_variable),
      unit_(std::move(unit)),
      terms_(std::move(terms)),
      antiderivative_(problem_.ratio.antiderivative()) {
    compiled_.reserve(terms_.size());
    for (const auto& term : terms_)
        compiled_.push_back({term.n, static_cast<long double>(term.coefficient.get_d()), CompiledGExpr(term.profile),
                             CompiledGExpr(delta_x(term.profile))});
}

Derivatives SeriesSolution::evaluate(long double x, long double t) const {
    long double T = 0;
    long double T_t = 0;
    if (time_variable_ == TimeVariable::InverseTSquared) {
        T = 1.0L / (t * t);
        T_t = -2.0L / (t * t * t);
    } else {
        T = antiderivative_.evaluate(t);
        T_t = problem_.ratio.evaluate(t);
    }

    long double S = unit_.get_d();
    long double S_t = 0;
    long double dS = 0;
    long double dS_t = 0;
    for (const auto& term : compiled_) {
        const long double Tn = std::pow(T, static_cast<long double>(term.n));
        const long double Tn_t =
            term.n == 0 ? 0.0L : term.n * std::pow(T, static_cast<long double>(term.n - 1)) * T_t;
        const long double phi = term.profile(x);
        const long double dphi = term.delta_profile(x);
        S += term.coefficient * Tn * phi;
        S_t += term.coefficient * Tn_t * phi;
        dS += term.coefficient * Tn * dphi;
        dS_t += term.coefficient * Tn_t * dphi;
    }

    long double P = 1;
    long double P_t = 0;
    switch (prefactor_) {
        case Prefactor::One: break;
        case Prefactor::ExpNegAntiderivative: {
            P = std::exp(-antiderivative_.evaluate(t));
            P_t = -problem_.ratio.evaluate(t) * P;
            break;
        }
        case Prefactor::HalfExpSeries: {
            const long double A = antiderivative_.evaluate(t);
            const long double A_t = problem_.ratio.evaluate(t);
            P = 0;
            long double power = 1;  // A^n / n!
            for (unsigned n = 0; n <= truncation_; ++n) {
                P += power / 2;
                if (n + 1 <= truncation_) P_t += power * A_t / 2;  // d/dt A^(n+1)/(n+1)! = A^n/n!·A'
                power *= A / (n + 1);
            }
            break;
        }
    }
    return Derivatives{P * S, P_t * S + P * S_t, P * dS, P_t * dS + P * dS_t};
}

long double SeriesSolution::value(long double x, long double t) const {
    return evaluate(x, t).u;
}

SeriesSolution solve_family_A(unsigned N) {
    if (N < 1) fail(ErrorCode::Precondition, "solve: truncation N must be >= 1");
    std::vector<SeriesTerm> terms;
    for (unsigned n = 0; n <= N; ++n) {
        const Rational f = factorial(n);
        terms.push_back({n, pow(Rational(1, 2), n) / (f * f), GExpr::term(1, n, 0)});
    }
    SeriesSolution u(PDEProblem{Family::A, {}, SignConvention::Derived}, N, SeriesSolution::Prefactor::One,
                     SeriesSolution::TimeVariable::InverseTSquared, 0, std::move(terms));
    u.add_note("side condition u(0+,t) = 0 is not satisfied: the series gives u(0,t) = 1");
    return u;
}

SeriesSolution solve_family_B(const LPoly& M, unsigned N, SignConvention convention) {
    if (N < 1) fail(ErrorCode::Precondition, "solve: truncation N must be >= 1");
    std::vector<SeriesTerm> terms;
    const bool derived = convention == SignConvention::Derived;
    for (unsigned n = 0; n <= N; ++n) {
        const Rational f = factorial(n);
        // derived: (−1/2)^n/(n!)²; printed: 1/((n!)²·2^(n−1))
        Rational coefficient = derived ? Rational(pow(Rational(-1, 2), n) / (f * f))
                                       : Rational(Rational(2) / (f * f * pow(Rational(2), n)));
        terms.push_back({n, coefficient, GExpr::term(1, n, 0)});
    }
    SeriesSolution u(PDEProblem{Family::B, M, convention}, N,
                     derived ? SeriesSolution::Prefactor::ExpNegAntiderivative
                             : SeriesSolution::Prefactor::HalfExpSeries,
                     SeriesSolution::TimeVariable::Antiderivative, 0, std::move(terms));
    if (!derived) u.add_note("printed series: both factors truncated at N; not derived from the transformed ODE");
    return u;
}

SeriesSolution solve_family_C(const LPoly& H, unsigned N, SignConvention convention) {
    if (N < 1) fail(ErrorCode::Precondition, "solve: truncation N must be >= 1");
    const GExpr half_gaussian = GExpr::term(1, 0, Rational(1, 2));
    const bool derived = convention == SignConvention::Derived;
    std::vector<SeriesTerm> terms;
    for (unsigned n = 1; n <= N; ++n) {
        Rational coefficient = Rational(1) / factorial(n);
        if (derived && n % 2 == 1) coefficient = -coefficient;
        terms.push_back({n, coefficient, star_power(half_gaussian, n)});
    }
    SeriesSolution u(PDEProblem{Family::C, H, convention}, N, SeriesSolution::Prefactor::One,
                     SeriesSolution::TimeVariable::Antiderivative, 1, std::move(terms));
    u.add_note("leading 1 stands for the sigma-constant transform term (impulse content)");
    u.add_note("side condition u(0+,t) = 0 is not satisfied: u(0,t) = 1 + (+/-)H(t) antiderivative");
    return u;
}

SeriesSolution solve_family_D(const LPoly& M, unsigned N) {
    SeriesSolution u(PDEProblem{Family::D, M, SignConvention::Derived}, std::max(N, 1u),
                     SeriesSolution::Prefactor::ExpNegAntiderivative, SeriesSolution::TimeVariable::Antiderivative, 0,
                     {SeriesTerm{0, 1, GExpr::constant(1)}});
    u.add_note("equation read as f*u + f*(1/x)*u_x + g*u_t + g*(1/x)*u_xt = 0");
    u.add_note("x-independent closed form; truncation unused");
    return u;
}

SeriesSolution solve(const PDEProblem& problem, unsigned N) {
    switch (problem.family) {
        case Family::A: return solve_family_A(N);
        case Family::B: return solve_family_B(problem.ratio, N, problem.convention);
        case Family::C: return solve_family_C(problem.ratio, N, problem.convention);
        case Family::D: return solve_family_D(problem.ratio, N);
    }
    fail(ErrorCode::Precondition, "solve: unknown family");
}

std::vector<GridPoint> log_grid(double x0, double x1, unsigned nx, double t0, double t1, unsigned nt) {
    if (nx == 0 || nt == 0) fail(ErrorCode::Precondition, "grid: point counts must be >= 1");
    if (!(x0 > 0) || !(x1 > 0) || !(t0 > 0) || !(t1 > 0))
        fail(ErrorCode::GridDomain, "grid: x and t bounds must be > 0");
    auto axis = [](double lo, double hi, unsigned n) {
        std::vector<double> out(n);
        for (unsigned i = 0; i < n; ++i)
            out[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        return out;
    };
    std::vector<GridPoint> grid;
    for (double x : axis(x0, x1, nx))
        for (double t : axis(t0, t1, nt)) grid.push_back({x, t});
    return grid;
}

std::vector<GridPoint> default_grid() { return log_grid(0.1, 2.0, 10, 0.5, 2.0, 10); }

namespace {

long double equation_lhs(const PDEProblem& p, const Derivatives& d, long double x, long double t) {
    switch (p.family) {
        case Family::A: return t * t * t * x * d.dx_u_t + 2 * x * d.u;
        case Family::B: {
            const long double M = p.ratio.evaluate(t);
            return M * d.u + M * d.dx_u + d.dx_u_t;
        }
        case Family::C: {
            const long double H = p.ratio.evaluate(t);
            return H * d.u - d.u_t + d.dx_u_t;
        }
        case Family::D: {
            const long double M = p.ratio.evaluate(t);
            return M * d.u + M * d.dx_u + d.u_t + d.dx_u_t;
        }
    }
    return 0;
}

void check_domain(long double x, long double t) {
    if (!(x > 0) || !(t > 0)) fail(ErrorCode::GridDomain, "residual: grid points need x > 0 and t > 0");
}

}  // namespace

long double residual_exact(const PDEProblem& p, const SeriesSolution& u, long double x, long double t) {
    check_domain(x, t);
    return equation_lhs(p, u.evaluate(x, t), x, t);
}

long double residual_finite_difference(const PDEProblem& p, const SeriesSolution& u, long double x, long double t,
                                       long double h) {
    check_domain(x, t);
    auto v = [&](long double xx, long double tt) { return u.value(xx, tt); };
    const long double u_x = (v(x + h, t) - v(x - h, t)) / (2 * h);
    const long double u_t = (v(x, t + h) - v(x, t - h)) / (2 * h);
    const long double u_xt = (v(x + h, t + h) - v(x + h, t - h) - v(x - h, t + h) + v(x - h, t - h)) / (4 * h * h);
    Derivatives d{v(x, t), u_t, u_x / x, u_xt / x};
    return equation_lhs(p, d, x, t);
}

ResidualReport residual(const PDEProblem& p, const SeriesSolution& u, const std::vector<GridPoint>& grid) {
    for (const auto& pt : grid) check_domain(pt.x, pt.t);
    ResidualReport report;
    report.problem = p;
    report.truncation = u.truncation();
    report.has_impulse_content = u.has_impulse_content();
    report.notes = u.notes();
    if (grid.empty()) return report;

    double x_max = 0;
    double t_lo = std::numeric_limits<double>::infinity();
    double t_hi = 0;
    for (const auto& pt : grid) {
        const double r = static_cast<double>(residual_exact(p, u, pt.x, pt.t));
        const double r_fd = static_cast<double>(residual_finite_difference(p, u, pt.x, pt.t));
        report.points.push_back({pt.x, pt.t, r, r_fd});
        report.max_abs = std::max(report.max_abs, std::abs(r));
        report.max_fd_disagreement = std::max(report.max_fd_disagreement, std::abs(r - r_fd));
        x_max = std::max(x_max, pt.x);
        t_lo = std::min(t_lo, pt.t);
        t_hi = std::max(t_hi, pt.t);
    }
    report.fd_agrees = report.max_fd_disagreement <= kFiniteDifferenceAgreement;
    report.truncation_bound = truncation_bound(u, x_max, t_lo, t_hi);
    return report;
}

namespace {

// Σ_{n≥first} b_n for a positive sequence whose ratio b_{n+1}/b_n is
// non-increasing for n ≥ 1: partial sums until the ratio drops below 1/2,
// then a geometric majorant.
long double ratio_tail(const std::function<long double(unsigned)>& log_b, unsigned first) {
    long double sum = 0;
    unsigned n = first;
    long double lb = log_b(n);
    if (lb == -std::numeric_limits<long double>::infinity()) return 0;
    for (unsigned guard = 0; guard < 1000000; ++guard, ++n) {
        const long double lb_next = log_b(n + 1);
        const long double ratio = std::exp(lb_next - lb);
        sum += std::exp(lb);
        if (n >= 1 && ratio < 0.5L) return sum + std::exp(lb_next) / (1 - ratio);
        lb = lb_next;
    }
    fail(ErrorCode::QuadratureFailure, "truncation_bound: majorant series did not settle");
}

long double log_or_ninf(long double v) {
    return v > 0 ? std::log(v) : -std::numeric_limits<long double>::infinity();
}

}  // namespace

double truncation_bound(const SeriesSolution& u, double x_max, double t_lo, double t_hi) {
    const PDEProblem& p = u.problem();
    if (p.family == Family::D) return 0;
    if (p.family == Family::A && !(t_lo > 0)) fail(ErrorCode::Precondition, "truncation_bound: family A needs t_lo > 0");
    if (!(x_max >= 0) || t_hi < t_lo) fail(ErrorCode::Precondition, "truncation_bound: invalid box");

    const long double T_max = p.family == Family::A ? 1.0L / (static_cast<long double>(t_lo) * t_lo)
                                                    : u.antiderivative().abs_bound(t_lo, t_hi);
    const long double log_T = log_or_ninf(T_max);
    const long double x2 = static_cast<long double>(x_max) * x_max;
    const long double log_x2 = log_or_ninf(x2);
    const long double ln2 = std::log(2.0L);

    // log of |coefficient_n|·T_max^n·sup|profile_n| from each family's closed form.
    std::function<long double(unsigned)> log_b;
    switch (p.family) {
        case Family::A:
        case Family::B: {
            const bool printed = p.family == Family::B && p.convention == SignConvention::PaperLiteral;
            log_b = [=](unsigned n) {
                const long double lf = std::lgamma(n + 1.0L);
                const long double power = n == 0 ? 0.0L : n * (log_T + log_x2);
                return -2 * lf + power - (printed ? (n - 1.0L) * ln2 : n * ln2);
            };
            break;
        }
        case Family::C:
            log_b = [=](unsigned n) {
                const long double power = n == 0 ? 0.0L : n * log_T + (n == 1 ? 0.0L : (n - 1.0L) * log_x2);
                return power + x2 / 2 - std::lgamma(n + 1.0L) - std::lgamma(static_cast<long double>(n)) -
                       (n - 1.0L) * ln2;
            };
            break;
        case Family::D: break;
    }

    const long double tail = ratio_tail(log_b, u.truncation() + 1);
    switch (u.prefactor()) {
        case SeriesSolution::Prefactor::One: return static_cast<double>(tail);
        case SeriesSolution::Prefactor::ExpNegAntiderivative: return static_cast<double>(std::exp(T_max) * tail);
        case SeriesSolution::Prefactor::HalfExpSeries: {
            // (A_∞·B_∞ − A_N·B_N) ≤ tail_A·sup B_∞ + sup|A_N|·tail_B
            long double head = 0;
            const unsigned first = p.family == Family::C ? 1 : 0;
            for (unsigned n = first; n <= u.truncation(); ++n) head += std::exp(log_b(n));
            const long double tail_B = ratio_tail(
                [=](unsigned n) { return (n == 0 ? 0.0L : n * log_T) - std::lgamma(n + 1.0L) - ln2; },
                u.truncation() + 1);
            return static_cast<double>(tail * std::exp(T_max) / 2 + head * tail_B);
        }
    }
    return static_cast<double>(tail);
}

TransformOdeCheck check_transform_ode(const PDEProblem& p, unsigned N) {
    if (N < 1) fail(ErrorCode::Precondition, "check_transform_ode: N must be >= 1");
    const LPoly& ratio = p.ratio;
    const LPoly A = ratio.antiderivative();
    TransformOdeCheck check;

    if (p.family == Family::B && p.convention == SignConvention::Derived) {
        // û = e^(−𝓜)·V, V = Σ_j V_j σ^(−j), V_{n+1} = (−𝓜/2)^n/(2·n!).
        // Claim: û_t = −M(1+2σ)/(2σ)·û, i.e. V_t − M·V = −M·V − (M/2)·σ^(−1)·V.
        std::vector<LPoly> V(N + 2);
        for (unsigned n = 0; n <= N; ++n)
            V[n + 1] = scale(power(A, n), pow(Rational(-1, 2), n) / (2 * factorial(n)));
        for (unsigned j = 1; j <= N + 1; ++j) {
            const LPoly lhs = V[j].derivative() - ratio * V[j];
            const LPoly rhs = scale(ratio * V[j], -1) - scale(ratio * V[j - 1], Rational(1, 2));
            ++check.orders_checked;
            if (!(lhs == rhs)) check.failing_orders.push_back(j);
        }
    } else if (p.family == Family::C) {
        // û = Σ_n d_n w^n with w = (2σ−1)^(−1), d_n = (±𝓗)^n/n!.
        // Claim: H·û + (2σ−1)·û_t = 0, coefficient of w^j: H·d_j + d_{j+1}'.
        const Rational sign = p.convention == SignConvention::Derived ? -1 : 1;
        std::vector<LPoly> d(N + 1);
        for (unsigned n = 0; n <= N; ++n) d[n] = scale(power(A, n), pow(sign, n) / factorial(n));
        for (unsigned j = 0; j < N; ++j) {
            const LPoly coefficient = ratio * d[j] + d[j + 1].derivative();
            ++check.orders_checked;
            if (!coefficient.is_zero()) check.failing_orders.push_back(j);
        }
    } else {
        fail(ErrorCode::Precondition,
             "check_transform_ode: available for family B (derived convention) and family C only");
    }
    check.exact = check.failing_orders.empty();
    return check;
}

}  // namespace l2t
