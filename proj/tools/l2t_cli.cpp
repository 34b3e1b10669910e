// Command-line front end for the L2-transform toolkit. Talks to the library
// only through the C interface in l2t/l2t.h.

#include "l2t/l2t.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
    std::string code;
    std::string message;
    int exit_code;
};

int exit_code_for(l2t_status status) {
    switch (status) {
        case L2T_OK: return 0;
        case L2T_ERR_SCHEMA:
        case L2T_ERR_PRECONDITION:
        case L2T_ERR_GRID_DOMAIN:
        case L2T_ERR_NONPOSITIVE_SAMPLE: return 2;
        case L2T_ERR_OVERFLOW:
        case L2T_ERR_DIVERGENT:
        case L2T_ERR_QUADRATURE: return 3;
        case L2T_ERR_IMPULSE: return 4;
        case L2T_ERR_INTERNAL: return 1;
    }
    return 1;
}

void check(l2t_status status) {
    if (status != L2T_OK) throw Failure{l2t_status_name(status), l2t_last_error(), exit_code_for(status)};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{"UsageError", message, 2}; }

struct ExprDeleter {
    void operator()(l2t_expr* e) const { l2t_expr_free(e); }
};
struct SolutionDeleter {
    void operator()(l2t_solution* u) const { l2t_solution_free(u); }
};
using Expr = std::unique_ptr<l2t_expr, ExprDeleter>;
using Solution = std::unique_ptr<l2t_solution, SolutionDeleter>;

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"SchemaError", "cannot read '" + path + "'", 2};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Expr load(const std::string& path) {
    l2t_expr* e = nullptr;
    const l2t_status status = l2t_expr_parse(read_input(path).c_str(), &e);
    if (status != L2T_OK)
        throw Failure{l2t_status_name(status), path + ": " + l2t_last_error(), exit_code_for(status)};
    return Expr(e);
}

std::string take(char* s) {
    std::string out(s);
    l2t_string_free(s);
    return out;
}

void print(const std::string& json) { std::cout << json << '\n'; }
void print(const Json& j) { print(j.dump()); }

void print(const Expr& e) {
    char* text = nullptr;
    check(l2t_expr_to_json(e.get(), &text));
    print(take(text));
}

template <typename Op, typename... Args>
Expr apply(Op op, Args... args) {
    l2t_expr* out = nullptr;
    check(op(args..., &out));
    return Expr(out);
}

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage_error(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.size() != expected)
        usage_error(std::string(flag) + ": expected " + std::to_string(expected) + " comma-separated values");
    return out;
}

unsigned as_count(double v, const char* flag) {
    if (!(v >= 1) || v != std::floor(v) || v > 1e6) usage_error(std::string(flag) + ": counts must be positive integers");
    return static_cast<unsigned>(v);
}

std::vector<double> sample_points(const std::string& spec) {
    const auto v = split_numbers(spec, 3, "--samples");
    const unsigned n = as_count(v[2], "--samples");
    if (n < 2) usage_error("--samples: need at least 2 points");
    std::vector<double> xs(n);
    for (unsigned i = 0; i < n; ++i) xs[i] = v[0] + (v[1] - v[0]) * i / (n - 1);
    return xs;
}

// Options shared by every command that builds a PDE solution.
struct SolutionOptions {
    std::string family;
    std::string ratio_path;
    unsigned n = 40;
    std::string convention = "derived";

    void attach(CLI::App* cmd, bool family_required = true) {
        auto* opt = cmd->add_option("--family", family, "PDE family A, B, C or D")
                        ->check(CLI::IsMember({"A", "B", "C", "D"}));
        if (family_required) opt->required();
        cmd->add_option("--ratio", ratio_path, "lpoly JSON for M (B, D) or H (C)");
        cmd->add_option("--n", n, "truncation order")->capture_default_str();
        cmd->add_option("--convention", convention, "paper or derived")
            ->check(CLI::IsMember({"paper", "derived"}))
            ->capture_default_str();
    }

    l2t_family family_enum() const { return static_cast<l2t_family>(family.at(0) - 'A'); }
    l2t_convention convention_enum() const {
        return convention == "paper" ? L2T_CONVENTION_PAPER : L2T_CONVENTION_DERIVED;
    }
    Expr ratio() const {
        if (family == "A") return nullptr;
        if (ratio_path.empty()) usage_error("--ratio is required for family " + family);
        return load(ratio_path);
    }
    Solution solve() const {
        Expr r = ratio();
        l2t_solution* u = nullptr;
        check(l2t_solve(family_enum(), r.get(), n, convention_enum(), &u));
        return Solution(u);
    }
};

// A real function of x: a gexpr file, or the configured solution at fixed t
// ("u") or with its leading constant removed ("u-1").
struct Operand {
    Expr expr;
    const l2t_solution* solution = nullptr;
    double t = 1;
    bool minus_one = false;

    static double call(double x, void* ctx) {
        const auto* self = static_cast<const Operand*>(ctx);
        double v = std::numeric_limits<double>::quiet_NaN();
        if (self->expr) {
            if (l2t_evaluate(self->expr.get(), x, &v) != L2T_OK) return std::numeric_limits<double>::quiet_NaN();
            return v;
        }
        l2t_derivatives d;
        if (l2t_solution_eval(self->solution, x, self->t, &d) != L2T_OK) return v;
        return self->minus_one ? d.u - 1 : d.u;
    }
};

Operand make_operand(const std::string& spec, const SolutionOptions& opts, Solution& holder, double t) {
    Operand op;
    if (spec == "u" || spec == "u-1") {
        if (opts.family.empty()) usage_error("operand '" + spec + "' needs --family");
        if (!holder) holder = opts.solve();
        op.solution = holder.get();
        op.t = t;
        op.minus_one = spec == "u-1";
    } else {
        op.expr = load(spec);
    }
    return op;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact L2-transform toolkit: transforms, convolution, PDE series solutions, growth order"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string in1, in2, scale_by, pole_spec;
    std::vector<std::string> poles;
    double at = 0, s_value = 0, sigma_value = 0, numeric_t = -1, t_value = 1;
    unsigned power_n = 1;
    std::string grid_spec, samples_spec, lower, upper, box_spec, operand_spec = "u";
    SolutionOptions sol;
    l2t_quad_config qcfg;
    l2t_quad_config_default(&qcfg);

    auto unary = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("expr", in1, "expression JSON file ('-' for stdin)")->required();
        return cmd;
    };
    auto binary = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("lhs", in1, "expression JSON file")->required();
        cmd->add_option("rhs", in2, "expression JSON file")->required();
        return cmd;
    };
    auto quad_flags = [&](CLI::App* cmd) {
        cmd->add_option("--rel-tol", qcfg.rel_tol)->capture_default_str();
        cmd->add_option("--abs-tol", qcfg.abs_tol)->capture_default_str();
        cmd->add_option("--max-refinements", qcfg.max_refinements)->capture_default_str();
        cmd->add_option("--tail-epsilon", qcfg.tail_epsilon)->capture_default_str();
    };

    auto* transform = unary("transform", "forward L2 transform of a gexpr");
    auto* invert = unary("invert", "inverse transform of an sexpr");
    auto* dx = unary("delta-x", "apply (1/x) d/dx to a gexpr");
    auto* ds = unary("delta-s", "apply (1/s) d/ds to an sexpr");
    auto* msig = unary("mul-sigma", "multiply an sexpr by sigma = s^2");
    auto* lim = unary("limit0", "f(0+) of a gexpr");
    auto* eval = unary("eval", "evaluate gexpr at x, sexpr at sigma, lpoly at t");
    eval->add_option("--at", at, "evaluation point")->required();
    auto* classify = unary("classify", "exact growth-order classification of a gexpr");
    auto* add = binary("add", "sum of two expressions of the same kind");
    auto* mul = binary("multiply", "product of two expressions of the same kind");
    auto* scl = unary("scale", "multiply an expression by a rational");
    scl->add_option("--by", scale_by, "rational p/q")->required();
    auto* pfrac = app.add_subcommand("pfrac", "partial fractions of prod (sigma-a)^(-m); factors as a:m");
    pfrac->add_option("factors", poles, "pole:multiplicity pairs, e.g. 0:2 1/2:1");

    auto* convolve = binary("convolve", "L2 convolution f * g (symbolic, or numeric at --numeric t)");
    convolve->add_option("--numeric", numeric_t, "evaluate the defining integral at this t instead");
    quad_flags(convolve);
    auto* starpow = unary("starpow", "n-fold convolution power");
    starpow->add_option("--n", power_n, "power (>= 1)")->required();
    auto* quad = unary("quad", "numerical L2 transform of a gexpr at s (or sigma)");
    auto* s_opt = quad->add_option("--s", s_value, "transform variable s > 0");
    auto* sigma_opt = quad->add_option("--sigma", sigma_value, "sigma = s^2 directly (may be <= 0 above max a)");
    s_opt->excludes(sigma_opt);
    quad_flags(quad);

    auto* solve = app.add_subcommand("solve", "series solution of a PDE family");
    sol.attach(solve);
    auto* residual = app.add_subcommand("residual", "residual report of a series solution on a grid");
    sol.attach(residual);
    residual->add_option("--grid", grid_spec, "x0,x1,nx,t0,t1,nt (log-spaced); default 0.1,2,10,0.5,2,10");
    auto* check_ode = app.add_subcommand("check-ode", "exact transform-domain ODE check (families B, C)");
    sol.attach(check_ode);
    auto* bound = app.add_subcommand("bound", "truncation tail bound over a box");
    sol.attach(bound);
    bound->add_option("--box", box_spec, "x_max,t_lo,t_hi")->required();

    auto* estimate = app.add_subcommand("estimate", "sampled growth-rate estimate");
    estimate->add_option("operand", operand_spec, "gexpr file, 'u' or 'u-1'")->capture_default_str();
    estimate->add_option("--samples", samples_spec, "x0,x1,n")->required();
    estimate->add_option("--t", t_value, "time at which solution operands are sampled")->capture_default_str();
    sol.attach(estimate, false);
    auto* bound_check = app.add_subcommand("bound-check", "check lower(x) <= upper(x) at samples");
    bound_check->add_option("--lower", lower, "gexpr file, 'u' or 'u-1'")->required();
    bound_check->add_option("--upper", upper, "gexpr file, 'u' or 'u-1'")->required();
    bound_check->add_option("--samples", samples_spec, "x0,x1,n")->required();
    bound_check->add_option("--t", t_value, "time at which solution operands are sampled")->capture_default_str();
    sol.attach(bound_check, false);

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            usage_error(e.what());
        }

        if (transform->parsed()) print(apply(l2t_transform, load(in1).get()));
        else if (invert->parsed()) print(apply(l2t_invert, load(in1).get()));
        else if (dx->parsed()) print(apply(l2t_delta_x, load(in1).get()));
        else if (ds->parsed()) print(apply(l2t_delta_s, load(in1).get()));
        else if (msig->parsed()) print(apply(l2t_mul_sigma, load(in1).get()));
        else if (lim->parsed()) {
            char* r = nullptr;
            check(l2t_limit_at_zero(load(in1).get(), &r));
            print(Json{{"limit", take(r)}});
        } else if (eval->parsed()) {
            double v = 0;
            check(l2t_evaluate(load(in1).get(), at, &v));
            print(Json{{"at", at}, {"value", v}});
        } else if (classify->parsed()) {
            char* r = nullptr;
            check(l2t_classify(load(in1).get(), &r));
            print(take(r));
        } else if (add->parsed()) print(apply(l2t_add, load(in1).get(), load(in2).get()));
        else if (mul->parsed()) print(apply(l2t_multiply, load(in1).get(), load(in2).get()));
        else if (scl->parsed()) print(apply(l2t_scale, load(in1).get(), scale_by.c_str()));
        else if (pfrac->parsed()) {
            std::vector<std::string> a;
            std::vector<unsigned> m;
            for (const auto& f : poles) {
                const auto colon = f.find(':');
                if (colon == std::string::npos) usage_error("pfrac: factor '" + f + "' must look like a:m");
                a.push_back(f.substr(0, colon));
                try {
                    m.push_back(static_cast<unsigned>(std::stoul(f.substr(colon + 1))));
                } catch (const std::exception&) {
                    usage_error("pfrac: bad multiplicity in '" + f + "'");
                }
            }
            std::vector<const char*> ptrs;
            for (const auto& s : a) ptrs.push_back(s.c_str());
            print(apply(l2t_partial_fractions, ptrs.data(), m.data(), ptrs.size()));
        } else if (convolve->parsed()) {
            Expr f = load(in1), g = load(in2);
            if (numeric_t >= 0) {
                double v = 0;
                check(l2t_convolve_numeric(f.get(), g.get(), numeric_t, &qcfg, &v));
                print(Json{{"t", numeric_t}, {"value", v}});
            } else {
                print(apply(l2t_convolve, f.get(), g.get()));
            }
        } else if (starpow->parsed()) print(apply(l2t_star_power, load(in1).get(), power_n));
        else if (quad->parsed()) {
            double v = 0;
            if (!s_opt->count() && !sigma_opt->count()) usage_error("quad: one of --s or --sigma is required");
            if (sigma_opt->count()) {
                check(l2t_quadrature_sigma(load(in1).get(), sigma_value, &qcfg, &v));
                print(Json{{"sigma", sigma_value}, {"value", v}});
            } else {
                check(l2t_quadrature(load(in1).get(), s_value, &qcfg, &v));
                print(Json{{"s", s_value}, {"value", v}});
            }
        } else if (solve->parsed()) {
            Solution u = sol.solve();
            char* r = nullptr;
            check(l2t_solution_to_json(u.get(), &r));
            print(take(r));
        } else if (residual->parsed()) {
            Solution u = sol.solve();
            char* r = nullptr;
            if (grid_spec.empty()) {
                check(l2t_residual(u.get(), nullptr, &r));
            } else {
                const auto g = split_numbers(grid_spec, 6, "--grid");
                const l2t_grid_spec spec{g[0], g[1], as_count(g[2], "--grid"), g[3], g[4], as_count(g[5], "--grid")};
                check(l2t_residual(u.get(), &spec, &r));
            }
            print(take(r));
        } else if (check_ode->parsed()) {
            Expr r = sol.ratio();
            char* out = nullptr;
            check(l2t_check_transform_ode(sol.family_enum(), r.get(), sol.n, sol.convention_enum(), &out));
            print(take(out));
        } else if (bound->parsed()) {
            const auto b = split_numbers(box_spec, 3, "--box");
            Solution u = sol.solve();
            double v = 0;
            check(l2t_truncation_bound(u.get(), b[0], b[1], b[2], &v));
            print(Json{{"x_max", b[0]}, {"t_lo", b[1]}, {"t_hi", b[2]}, {"bound", v}});
        } else if (estimate->parsed()) {
            Solution holder;
            Operand op = make_operand(operand_spec, sol, holder, t_value);
            const auto xs = sample_points(samples_spec);
            char* r = nullptr;
            check(l2t_estimate_rate(&Operand::call, &op, xs.data(), xs.size(), &r));
            print(take(r));
        } else if (bound_check->parsed()) {
            Solution holder;
            Operand lo = make_operand(lower, sol, holder, t_value);
            Operand hi = make_operand(upper, sol, holder, t_value);
            const auto xs = sample_points(samples_spec);
            int holds = 0;
            check(l2t_check_bound(&Operand::call, &lo, &Operand::call, &hi, xs.data(), xs.size(), &holds));
            print(Json{{"holds", holds != 0}});
        }
        return 0;
    } catch (const Failure& f) {
        std::cerr << Json{{"code", f.code}, {"message", f.message}}.dump() << '\n';
        return f.exit_code;
    }
}
