#include "l2t/l2t.h"

#include "convolution.hpp"
#include "error.hpp"
#include "io.hpp"
#include "order.hpp"
#include "pde.hpp"
#include "quadrature.hpp"
#include "sexpr.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct l2t_expr {
    l2t::io::ExprDocument doc;
};

struct l2t_solution {
    l2t::SeriesSolution solution;
};

namespace {

thread_local std::string last_error;

l2t_status status_of(l2t::ErrorCode code) {
    using l2t::ErrorCode;
    switch (code) {
        case ErrorCode::Schema: return L2T_ERR_SCHEMA;
        case ErrorCode::Precondition: return L2T_ERR_PRECONDITION;
        case ErrorCode::Overflow: return L2T_ERR_OVERFLOW;
        case ErrorCode::DivergentIntegral: return L2T_ERR_DIVERGENT;
        case ErrorCode::QuadratureFailure: return L2T_ERR_QUADRATURE;
        case ErrorCode::ImpulseContent: return L2T_ERR_IMPULSE;
        case ErrorCode::GridDomain: return L2T_ERR_GRID_DOMAIN;
        case ErrorCode::NonPositiveSample: return L2T_ERR_NONPOSITIVE_SAMPLE;
    }
    return L2T_ERR_INTERNAL;
}

template <typename Fn>
l2t_status guarded(Fn&& fn) {
    try {
        fn();
        return L2T_OK;
    } catch (const l2t::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return L2T_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return L2T_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) l2t::fail(l2t::ErrorCode::Precondition, std::string(what) + " must not be NULL");
}

template <typename T>
const T& as(const l2t_expr* e, const char* role) {
    require(e, role);
    if (!std::holds_alternative<T>(e->doc))
        l2t::fail(l2t::ErrorCode::Precondition,
                  std::string(role) + ": unexpected expression kind '" + l2t::io::kind_name(e->doc) + "'");
    return std::get<T>(e->doc);
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename T>
void emit(T&& value, l2t_expr** out) {
    require(out, "out");
    *out = new l2t_expr{std::forward<T>(value)};
}

void emit_json(const l2t::io::Json& j, char** out) {
    require(out, "out");
    *out = duplicate(j.dump());
}

l2t::QuadratureConfig config_of(const l2t_quad_config* cfg) {
    l2t::QuadratureConfig c;
    if (cfg) c = {cfg->rel_tol, cfg->abs_tol, cfg->max_refinements, cfg->tail_epsilon};
    return c;
}

l2t::PDEProblem problem_of(l2t_family family, const l2t_expr* ratio, l2t_convention convention) {
    l2t::PDEProblem p;
    switch (family) {
        case L2T_FAMILY_A: p.family = l2t::Family::A; break;
        case L2T_FAMILY_B: p.family = l2t::Family::B; break;
        case L2T_FAMILY_C: p.family = l2t::Family::C; break;
        case L2T_FAMILY_D: p.family = l2t::Family::D; break;
        default: l2t::fail(l2t::ErrorCode::Precondition, "unknown PDE family");
    }
    if (p.family != l2t::Family::A) p.ratio = as<l2t::LPoly>(ratio, "ratio");
    p.convention = convention == L2T_CONVENTION_PAPER ? l2t::SignConvention::PaperLiteral
                                                      : l2t::SignConvention::Derived;
    return p;
}

}  // namespace

extern "C" {

const char* l2t_status_name(l2t_status status) {
    switch (status) {
        case L2T_OK: return "Ok";
        case L2T_ERR_SCHEMA: return "SchemaError";
        case L2T_ERR_PRECONDITION: return "PreconditionError";
        case L2T_ERR_OVERFLOW: return "Overflow";
        case L2T_ERR_DIVERGENT: return "DivergentIntegral";
        case L2T_ERR_QUADRATURE: return "QuadratureFailure";
        case L2T_ERR_IMPULSE: return "ImpulseContent";
        case L2T_ERR_GRID_DOMAIN: return "GridDomain";
        case L2T_ERR_NONPOSITIVE_SAMPLE: return "NonPositiveSample";
        case L2T_ERR_INTERNAL: return "InternalError";
    }
    return "InternalError";
}

const char* l2t_last_error(void) { return last_error.c_str(); }

void l2t_string_free(char* s) { std::free(s); }

void l2t_quad_config_default(l2t_quad_config* cfg) {
    if (!cfg) return;
    const l2t::QuadratureConfig c;
    *cfg = {c.rel_tol, c.abs_tol, c.max_refinements, c.tail_epsilon};
}

l2t_status l2t_expr_parse(const char* json, l2t_expr** out) {
    return guarded([&] {
        require(json, "json");
        emit(l2t::io::parse(json), out);
    });
}

l2t_status l2t_expr_to_json(const l2t_expr* e, char** out) {
    return guarded([&] {
        require(e, "expression");
        require(out, "out");
        *out = duplicate(l2t::io::serialize(e->doc));
    });
}

l2t_kind l2t_expr_kind(const l2t_expr* e) { return static_cast<l2t_kind>(e ? e->doc.index() : 0); }

int l2t_expr_equal(const l2t_expr* a, const l2t_expr* b) { return a && b && a->doc == b->doc ? 1 : 0; }

void l2t_expr_free(l2t_expr* e) { delete e; }

l2t_status l2t_add(const l2t_expr* a, const l2t_expr* b, l2t_expr** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        if (a->doc.index() != b->doc.index())
            l2t::fail(l2t::ErrorCode::Precondition, "add: operands must have the same kind");
        std::visit(
            [&](const auto& lhs) {
                using T = std::decay_t<decltype(lhs)>;
                emit(T(lhs + std::get<T>(b->doc)), out);
            },
            a->doc);
    });
}

l2t_status l2t_scale(const l2t_expr* e, const char* rational, l2t_expr** out) {
    return guarded([&] {
        require(e, "expression");
        require(rational, "rational");
        const l2t::Rational c = l2t::parse_rational(rational);
        std::visit([&](const auto& v) { emit(scale(v, c), out); }, e->doc);
    });
}

l2t_status l2t_multiply(const l2t_expr* a, const l2t_expr* b, l2t_expr** out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        if (a->doc.index() != b->doc.index())
            l2t::fail(l2t::ErrorCode::Precondition, "multiply: operands must have the same kind");
        std::visit(
            [&](const auto& lhs) {
                using T = std::decay_t<decltype(lhs)>;
                emit(T(lhs * std::get<T>(b->doc)), out);
            },
            a->doc);
    });
}

l2t_status l2t_evaluate(const l2t_expr* e, double at, double* out) {
    return guarded([&] {
        require(e, "expression");
        require(out, "out");
        if (const auto* g = std::get_if<l2t::GExpr>(&e->doc))
            *out = l2t::evaluate(*g, at);
        else if (const auto* s = std::get_if<l2t::SExpr>(&e->doc))
            *out = l2t::evaluate(*s, at);
        else
            *out = static_cast<double>(std::get<l2t::LPoly>(e->doc).evaluate(at));
    });
}

l2t_status l2t_delta_x(const l2t_expr* g, l2t_expr** out) {
    return guarded([&] { emit(l2t::delta_x(as<l2t::GExpr>(g, "delta_x")), out); });
}

l2t_status l2t_limit_at_zero(const l2t_expr* g, char** rational_out) {
    return guarded([&] {
        const l2t::Rational r = l2t::limit_at_zero(as<l2t::GExpr>(g, "limit_at_zero"));
        require(rational_out, "out");
        *rational_out = duplicate(l2t::to_string(r));
    });
}

l2t_status l2t_transform(const l2t_expr* g, l2t_expr** out) {
    return guarded([&] { emit(l2t::forward(as<l2t::GExpr>(g, "transform")), out); });
}

l2t_status l2t_invert(const l2t_expr* s, l2t_expr** out) {
    return guarded([&] { emit(l2t::inverse(as<l2t::SExpr>(s, "invert")), out); });
}

l2t_status l2t_delta_s(const l2t_expr* s, l2t_expr** out) {
    return guarded([&] { emit(l2t::delta_s(as<l2t::SExpr>(s, "delta_s")), out); });
}

l2t_status l2t_mul_sigma(const l2t_expr* s, l2t_expr** out) {
    return guarded([&] { emit(l2t::mul_sigma(as<l2t::SExpr>(s, "mul_sigma")), out); });
}

l2t_status l2t_partial_fractions(const char* const* poles, const unsigned* multiplicities, size_t count,
                                 l2t_expr** out) {
    return guarded([&] {
        if (count > 0) {
            require(poles, "poles");
            require(multiplicities, "multiplicities");
        }
        std::vector<l2t::PoleFactor> factors;
        for (size_t i = 0; i < count; ++i) {
            require(poles[i], "pole");
            factors.push_back({l2t::parse_rational(poles[i]), multiplicities[i]});
        }
        emit(l2t::partial_fractions(factors), out);
    });
}

l2t_status l2t_convolve(const l2t_expr* f, const l2t_expr* g, l2t_expr** out) {
    return guarded([&] { emit(l2t::convolve_symbolic(as<l2t::GExpr>(f, "f"), as<l2t::GExpr>(g, "g")), out); });
}

l2t_status l2t_convolve_numeric(const l2t_expr* f, const l2t_expr* g, double t, const l2t_quad_config* cfg,
                                double* out) {
    return guarded([&] {
        const l2t::GExpr& fe = as<l2t::GExpr>(f, "f");
        const l2t::GExpr& ge = as<l2t::GExpr>(g, "g");
        require(out, "out");
        *out = l2t::convolve_numeric([&](double x) { return l2t::evaluate(fe, x); },
                                     [&](double x) { return l2t::evaluate(ge, x); }, t, config_of(cfg));
    });
}

l2t_status l2t_star_power(const l2t_expr* f, unsigned n, l2t_expr** out) {
    return guarded([&] { emit(l2t::star_power(as<l2t::GExpr>(f, "f"), n), out); });
}

l2t_status l2t_quadrature(const l2t_expr* g, double s, const l2t_quad_config* cfg, double* out) {
    return guarded([&] {
        const l2t::GExpr& e = as<l2t::GExpr>(g, "quadrature");
        require(out, "out");
        *out = l2t::l2_quadrature(e, s, config_of(cfg));
    });
}

l2t_status l2t_quadrature_sigma(const l2t_expr* g, double sigma, const l2t_quad_config* cfg, double* out) {
    return guarded([&] {
        const l2t::GExpr& e = as<l2t::GExpr>(g, "quadrature");
        require(out, "out");
        *out = l2t::l2_quadrature_sigma(e, sigma, config_of(cfg));
    });
}

l2t_status l2t_solve(l2t_family family, const l2t_expr* ratio, unsigned n, l2t_convention convention,
                     l2t_solution** out) {
    return guarded([&] {
        require(out, "out");
        *out = new l2t_solution{l2t::solve(problem_of(family, ratio, convention), n)};
    });
}

l2t_status l2t_solution_eval(const l2t_solution* u, double x, double t, l2t_derivatives* out) {
    return guarded([&] {
        require(u, "solution");
        require(out, "out");
        const l2t::Derivatives d = u->solution.evaluate(x, t);
        *out = {static_cast<double>(d.u), static_cast<double>(d.u_t), static_cast<double>(d.dx_u),
                static_cast<double>(d.dx_u_t)};
    });
}

l2t_status l2t_solution_to_json(const l2t_solution* u, char** out) {
    return guarded([&] {
        require(u, "solution");
        emit_json(l2t::io::to_json(u->solution), out);
    });
}

void l2t_solution_free(l2t_solution* u) { delete u; }

l2t_status l2t_residual(const l2t_solution* u, const l2t_grid_spec* grid, char** report_json) {
    return guarded([&] {
        require(u, "solution");
        const auto points = grid ? l2t::log_grid(grid->x0, grid->x1, grid->nx, grid->t0, grid->t1, grid->nt)
                                 : l2t::default_grid();
        emit_json(l2t::io::to_json(l2t::residual(u->solution.problem(), u->solution, points)), report_json);
    });
}

l2t_status l2t_truncation_bound(const l2t_solution* u, double x_max, double t_lo, double t_hi, double* out) {
    return guarded([&] {
        require(u, "solution");
        require(out, "out");
        *out = l2t::truncation_bound(u->solution, x_max, t_lo, t_hi);
    });
}

l2t_status l2t_check_transform_ode(l2t_family family, const l2t_expr* ratio, unsigned n, l2t_convention convention,
                                   char** report_json) {
    return guarded([&] {
        emit_json(l2t::io::to_json(l2t::check_transform_ode(problem_of(family, ratio, convention), n)), report_json);
    });
}

l2t_status l2t_classify(const l2t_expr* g, char** report_json) {
    return guarded([&] { emit_json(l2t::io::to_json(l2t::classify_exact(as<l2t::GExpr>(g, "classify"))), report_json); });
}

l2t_status l2t_estimate_rate(l2t_real_fn f, void* ctx, const double* xs, size_t count, char** report_json) {
    return guarded([&] {
        require(reinterpret_cast<const void*>(f), "f");
        require(xs, "xs");
        const auto report = l2t::estimate_rate([&](double x) { return f(x, ctx); }, std::span(xs, count));
        emit_json(l2t::io::to_json(report), report_json);
    });
}

l2t_status l2t_check_bound(l2t_real_fn f, void* f_ctx, l2t_real_fn g, void* g_ctx, const double* xs, size_t count,
                           int* holds) {
    return guarded([&] {
        require(reinterpret_cast<const void*>(f), "f");
        require(reinterpret_cast<const void*>(g), "g");
        require(xs, "xs");
        require(holds, "holds");
        *holds = l2t::check_bound([&](double x) { return f(x, f_ctx); }, [&](double x) { return g(x, g_ctx); },
                                  std::span(xs, count))
                     ? 1
                     : 0;
    });
}

}  // extern "C"
