// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "convolution.hpp"
#include "error.hpp"
#include "io.hpp"
#include "order.hpp"
#include "pde.hpp"
#include "quadrature.hpp"
#include "sexpr.hpp"
#include "support/generators.hpp"
#include "support/process.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace l2t;
using l2t::testing::Gen;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<Rational> random_rates(Gen& gen, int count) {
    std::vector<Rational> rates;
    for (int i = 0; i < count; ++i) rates.push_back(gen.rational(-3, 3, 7));
    return rates;
}

// --- 1 ----------------------------------------------------------------------
Outcome transform_pairs() {
    Outcome o;
    for (unsigned n = 0; n <= 10; ++n)
        o.require(forward(GExpr::term(1, n, 0)) == SExpr::pole(factorial(n) / 2, 0, n + 1),
                  "x^" + std::to_string(2 * n));
    Gen gen(1001);
    for (const Rational& a : random_rates(gen, 20))
        o.require(forward(GExpr::term(1, 0, a)) == SExpr::pole(Rational(1, 2), a, 1), "e^(" + to_string(a) + " x^2)");
    o.detail = o.pass ? "11 monomials, 20 gaussians exact" : o.detail;
    return o;
}

// --- 2 ----------------------------------------------------------------------
Outcome round_trip() {
    Outcome o;
    Gen gen(1002);
    for (int i = 0; i < 200; ++i) {
        const GExpr e = gen.gexpr(6, Rational(-3), Rational(3), 6);
        o.require(inverse(forward(e)) == e, "trial " + std::to_string(i));
    }
    if (o.pass) o.detail = "200 random expressions";
    return o;
}

// --- 3 ----------------------------------------------------------------------
Outcome operator_identities() {
    Outcome o;
    Gen gen(1003);
    for (int i = 0; i < 50; ++i) {
        const GExpr e = gen.gexpr(5, Rational(-2), Rational(2), 4);
        const SExpr F = forward(e);
        o.require(forward(delta_x(e)) == scale(mul_sigma(F), 2) - SExpr::constant(limit_at_zero(e)),
                  "delta_x identity, trial " + std::to_string(i));
        SExpr ds = F;
        for (unsigned n = 1; n <= 4; ++n) {
            ds = delta_s(ds);
            o.require(forward(multiply(GExpr::term(1, n, 0), e)) == scale(ds, pow(Rational(-1, 2), n)),
                      "x^2n identity, trial " + std::to_string(i) + ", n = " + std::to_string(n));
        }
    }
    if (o.pass) o.detail = "50 random expressions, n <= 4";
    return o;
}

// --- 4 ----------------------------------------------------------------------
Outcome quadrature_agreement() {
    Outcome o;
    std::vector<GExpr> battery;
    for (unsigned n = 0; n <= 10; ++n) battery.push_back(GExpr::term(1, n, 0));
    Gen gen(1001);
    for (const Rational& a : random_rates(gen, 20)) battery.push_back(GExpr::term(1, 0, a));
    double worst = 0;
    for (const GExpr& e : battery) {
        const double max_a = to_double(*e.max_rate());
        for (double shift : {0.5, 2.0}) {
            const double sigma = max_a + shift;
            const double exact = evaluate(forward(e), sigma);
            const double numeric = l2_quadrature_sigma(e, sigma);
            const double rel = std::abs(numeric - exact) / std::abs(exact);
            worst = std::max(worst, rel);
            o.require(rel <= 1e-8, "relative error " + fmt(rel));
        }
    }
    if (o.pass) o.detail = "62 integrals, worst relative error " + fmt(worst);
    return o;
}

// --- 5 ----------------------------------------------------------------------
Outcome convolution_theorem() {
    Outcome o;
    Gen gen(1005);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        const GExpr f = gen.gexpr(3, Rational(-1), Rational(1), 3);
        const GExpr g = gen.gexpr(3, Rational(-1), Rational(1), 3);
        const GExpr fg = convolve_symbolic(f, g);
        o.require(forward(fg) == multiply(forward(f), forward(g)), "symbolic, trial " + std::to_string(i));
        for (double t : {0.5, 1.0, 2.0}) {
            const double sym = evaluate(fg, t);
            const double num = convolve_numeric([&](double x) { return evaluate(f, x); },
                                                [&](double x) { return evaluate(g, x); }, t);
            const double err = std::abs(sym - num) / std::max(1.0, std::abs(sym));
            worst = std::max(worst, err);
            o.require(err <= 1e-8, "numeric at t = " + fmt(t) + ": " + fmt(err));
        }
    }
    if (o.pass) o.detail = "50 pairs exact; numeric worst " + fmt(worst);
    return o;
}

// --- 6 ----------------------------------------------------------------------
Outcome star_powers() {
    Outcome o;
    const GExpr e = GExpr::term(1, 0, Rational(1, 2));
    for (unsigned n = 1; n <= 6; ++n) {
        const Rational c = Rational(1) / (pow(Rational(2), n - 1) * factorial(n - 1));
        o.require(star_power(e, n) == GExpr::term(c, n - 1, Rational(1, 2)), "n = " + std::to_string(n));
    }
    if (o.pass) o.detail = "n = 1..6 exact";
    return o;
}

// --- 7 ----------------------------------------------------------------------
Outcome family_a() {
    Outcome o;
    const PDEProblem p{Family::A, {}, SignConvention::Derived};
    const double r30 = residual(p, solve_family_A(30), default_grid()).max_abs;
    const double r10 = residual(p, solve_family_A(10), default_grid()).max_abs;
    const double r20 = residual(p, solve_family_A(20), default_grid()).max_abs;
    o.require(r30 <= 1e-8, "N = 30 residual " + fmt(r30));
    o.require(r20 * 10 <= r10, "N = 10 -> 20 reduction " + fmt(r10 / r20));
    long double oracle = 0;
    for (unsigned n = 0; n <= 30; ++n) {
        const long double f = std::tgamma(n + 1.0L);
        oracle += std::pow(0.5L, n) / (f * f);
    }
    const long double u11 = solve_family_A(30).value(1, 1);
    o.require(std::abs(u11 - oracle) <= 1e-12L, "u(1,1) mismatch");
    if (o.pass)
        o.detail = "max_abs(N=30) " + fmt(r30) + ", reduction " + fmt(r10 / r20) + "x, u(1,1) = " +
                   fmt(static_cast<double>(u11));
    return o;
}

// --- 8 ----------------------------------------------------------------------
Outcome family_b() {
    Outcome o;
    const LPoly one = LPoly::constant(1), t = LPoly::monomial(1, 1);
    for (const LPoly& M : {one, t, scale(t, 2), one + t}) {
        std::ostringstream name;
        name << M;
        o.require(check_transform_ode(PDEProblem{Family::B, M, SignConvention::Derived}, 40).exact,
                  "ODE identity for M = " + name.str());
    }
    const PDEProblem p{Family::B, one, SignConvention::Derived};
    const double r = residual(p, solve(p, 40), default_grid()).max_abs;
    const double r2 = residual(p, solve(p, 40), log_grid(0.2, 2, 10, 0.2, 2, 10)).max_abs;
    o.require(r <= 1e-8 && r2 <= 1e-8, "residual " + fmt(std::max(r, r2)));
    if (o.pass) o.detail = "4 ratios exact; residual " + fmt(std::max(r, r2));
    return o;
}

// --- 9 ----------------------------------------------------------------------
Outcome family_d() {
    Outcome o;
    double worst = 0;
    for (const LPoly& M : {LPoly(), LPoly::constant(1), LPoly::monomial(2, 1)}) {
        const PDEProblem p{Family::D, M, SignConvention::Derived};
        const double r = residual(p, solve(p, 1), default_grid()).max_abs;
        worst = std::max(worst, r);
        o.require(r <= 1e-12, "residual " + fmt(r));
    }
    if (o.pass) o.detail = "worst residual " + fmt(worst);
    return o;
}

// --- 10 ---------------------------------------------------------------------
Outcome order_analysis() {
    Outcome o;
    const SeriesSolution u = solve_family_C(LPoly::constant(1), 60, SignConvention::PaperLiteral);
    const RealFunction u_minus_1 = [&](double x) { return static_cast<double>(u.value(x, 1) - 1); };
    const auto xs = linspace(0.5, 4, 64);
    o.require(check_bound(u_minus_1, [](double x) { return std::exp(0.75 * x * x); }, xs), "upper bound");
    o.require(check_bound([](double x) { return std::exp(0.5 * x * x); }, u_minus_1, xs), "lower bound");
    const GrowthReport est = estimate_rate(u_minus_1, linspace(2, 6, 64));
    o.require(est.is_exp_squared_order == Tristate::Yes, "estimate: exp-squared order");
    o.require(est.is_exponential_order == Tristate::No, "estimate: exponential order");
    o.require(*est.estimated_rate > 0.5 && *est.estimated_rate <= 0.75, "rate " + fmt(*est.estimated_rate));
    const GrowthReport exact = classify_exact(GExpr::term(1, 0, Rational(1, 2)));
    o.require(exact.is_exp_squared_order == Tristate::Yes && exact.is_exponential_order == Tristate::No,
              "classify e^(x^2/2)");
    if (o.pass) o.detail = "sandwich holds; estimated rate " + fmt(*est.estimated_rate);
    return o;
}

// --- 11 ---------------------------------------------------------------------
Outcome family_c_harness() {
    Outcome o;
    double worst = 0;
    std::string reported;
    for (const LPoly& H : {LPoly::constant(1), LPoly::monomial(1, 1)})
        for (auto conv : {SignConvention::Derived, SignConvention::PaperLiteral}) {
            const PDEProblem p{Family::C, H, conv};
            const ResidualReport r = residual(p, solve(p, 40), default_grid());
            worst = std::max(worst, r.max_fd_disagreement);
            o.require(r.fd_agrees && r.max_fd_disagreement <= 1e-4,
                      std::string(convention_name(conv)) + " gap " + fmt(r.max_fd_disagreement));
            if (H == LPoly::monomial(1, 1))
                reported += std::string(reported.empty() ? "" : ", ") + convention_name(conv) + " max_abs " +
                            fmt(r.max_abs);
        }
    if (o.pass) o.detail = "worst exact/FD gap " + fmt(worst) + "; H = t " + reported;
    return o;
}

// --- 12 ---------------------------------------------------------------------
Outcome partial_fraction_recombination() {
    Outcome o;
    Gen gen(1012);
    for (int i = 0; i < 100; ++i) {
        std::vector<PoleFactor> factors;
        const int count = gen.integer(1, 4);
        for (int k = 0; k < count; ++k)
            factors.push_back({gen.rational(-2, 2, 3), static_cast<unsigned>(gen.integer(1, 3))});
        const SExpr pf = partial_fractions(factors);
        o.require(l2t::testing::times_denominator(pf, l2t::testing::group_poles(factors)) ==
                      l2t::testing::SigmaPoly::constant(1),
                  "trial " + std::to_string(i));
    }
    if (o.pass) o.detail = "100 products exact";
    return o;
}

// --- 13 ---------------------------------------------------------------------
class CliBattery {
public:
    CliBattery() : dir_(std::filesystem::temp_directory_path() / ("l2t_acceptance_" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(dir_);
    }
    ~CliBattery() { std::filesystem::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& content) {
        const auto p = dir_ / name;
        std::ofstream(p) << content << "\n";
        return "\"" + p.string() + "\"";
    }

    // Runs twice; records instability or a nonzero exit.
    std::string run(const std::string& args, Outcome& o) {
        const auto a = l2t::testing::run_cli(args);
        const auto b = l2t::testing::run_cli(args);
        o.require(a.exit_code == 0, "exit " + std::to_string(a.exit_code) + ": " + args + " " + a.err);
        o.require(a.out == b.out, "unstable output: " + args);
        ++runs_;
        std::string out = a.out;
        while (!out.empty() && out.back() == '\n') out.pop_back();
        return out;
    }

    void expect_exit(const std::string& args, int code, const std::string& error, Outcome& o) {
        const auto r = l2t::testing::run_cli(args);
        const auto j = io::Json::parse(r.err, nullptr, false);
        o.require(r.exit_code == code && !j.is_discarded() && j.value("code", "") == error,
                  "expected exit " + std::to_string(code) + " for " + args);
        ++runs_;
    }

    int runs() const { return runs_; }

private:
    std::filesystem::path dir_;
    int runs_ = 0;
};

double number(const std::string& json, const char* key) { return io::Json::parse(json)[key].get<double>(); }

Outcome cli_battery() {
    Outcome o;
    CliBattery cli;
    const std::string data = L2T_TEST_DATA;
    auto d = [&](const std::string& n) { return "\"" + data + "/" + n + "\""; };

    // 1, 2, 4
    for (unsigned n : {0u, 3u, 10u}) {
        const std::string e = cli.file("mono" + std::to_string(n) + ".json", io::serialize(GExpr::term(1, n, 0)));
        const std::string s = cli.run("transform " + e, o);
        o.require(s == io::serialize(SExpr::pole(factorial(n) / 2, 0, n + 1)), "cli transform x^2n");
        const std::string se = cli.file("s" + std::to_string(n) + ".json", s);
        o.require(cli.run("invert " + se, o) == io::serialize(GExpr::term(1, n, 0)), "cli round trip");
        const double q = number(cli.run("quad " + e + " --s 1.5", o), "value");
        const double v = number(cli.run("eval " + se + " --at 2.25", o), "value");
        o.require(std::abs(q - v) <= 1e-8 * std::abs(v), "cli quadrature agreement");
    }
    // 3
    Gen gen(1013);
    for (int i = 0; i < 3; ++i) {
        const GExpr e = gen.gexpr(4, Rational(-2), Rational(2), 3);
        const std::string ef = cli.file("op" + std::to_string(i) + ".json", io::serialize(e));
        const std::string lhs = cli.run("transform " + cli.file("dx.json", cli.run("delta-x " + ef, o)), o);
        const std::string ms = cli.run("mul-sigma " + cli.file("fe.json", cli.run("transform " + ef, o)), o);
        const std::string lim = io::Json::parse(cli.run("limit0 " + ef, o))["limit"];
        const std::string twice = cli.run("scale " + cli.file("ms.json", ms) + " --by 2", o);
        const std::string imp =
            io::serialize(SExpr::constant(-parse_rational(lim)));
        const std::string rhs = cli.run("add " + cli.file("tw.json", twice) + " " + cli.file("imp.json", imp), o);
        o.require(lhs == rhs, "cli delta_x identity");
        const std::string x2e = cli.run("multiply " + d("x2.json") + " " + ef, o);
        const std::string ds = cli.run("delta-s " + cli.file("fe2.json", cli.run("transform " + ef, o)), o);
        o.require(cli.run("transform " + cli.file("x2e.json", x2e), o) ==
                      cli.run("scale " + cli.file("ds.json", ds) + " --by -1/2", o),
                  "cli x^2 identity");
    }
    // 5, 6
    const std::string conv = cli.run("convolve " + d("mixed.json") + " " + d("exp_half.json"), o);
    const std::string lhs = cli.run("transform " + cli.file("conv.json", conv), o);
    const std::string rhs = cli.run("multiply " + cli.file("tf.json", cli.run("transform " + d("mixed.json"), o)) + " " +
                                        cli.file("tg.json", cli.run("transform " + d("exp_half.json"), o)),
                                    o);
    o.require(lhs == rhs, "cli convolution theorem");
    const double num = number(cli.run("convolve " + d("mixed.json") + " " + d("exp_half.json") + " --numeric 1", o), "value");
    const double sym = number(cli.run("eval " + cli.file("conv2.json", conv) + " --at 1", o), "value");
    o.require(std::abs(num - sym) <= 1e-8 * std::max(1.0, std::abs(sym)), "cli numeric convolution");
    o.require(cli.run("starpow " + d("exp_half.json") + " --n 2", o) ==
                  R"({"kind":"gexpr","terms":[{"c":"1/2","k":1,"a":"1/2"}]})",
              "cli starpow");
    // 7, 8, 9, 11
    o.require(number(cli.run("residual --family A --n 30", o), "max_abs") <= 1e-8, "cli family A");
    o.require(io::Json::parse(cli.run("check-ode --family B --ratio " + d("ratio_1_plus_t.json") + " --n 20", o))["exact"] ==
                  true,
              "cli family B ODE");
    o.require(number(cli.run("residual --family B --ratio " + d("ratio_one.json") + " --n 40", o), "max_abs") <= 1e-8,
              "cli family B residual");
    o.require(number(cli.run("residual --family D --ratio " + d("ratio_2t.json"), o), "max_abs") <= 1e-12,
              "cli family D");
    for (const char* conv_name : {"paper", "derived"})
        o.require(io::Json::parse(cli.run("residual --family C --ratio " + d("ratio_t.json") + " --convention " +
                                              conv_name,
                                          o))["fd_agrees"] == true,
                  "cli family C harness");
    // 10
    const std::string sol = "--family C --ratio " + d("ratio_one.json") + " --convention paper --n 60";
    o.require(io::Json::parse(cli.run("bound-check " + sol + " --lower u-1 --upper " + d("exp_three_quarters.json") +
                                          " --samples 0.5,4,64",
                                      o))["holds"] == true,
              "cli upper sandwich");
    o.require(io::Json::parse(cli.run("bound-check " + sol + " --lower " + d("exp_half.json") +
                                          " --upper u-1 --samples 0.5,4,64",
                                      o))["holds"] == true,
              "cli lower sandwich");
    const auto est = io::Json::parse(cli.run("estimate u-1 " + sol + " --samples 2,6,64", o));
    o.require(est["is_exp_squared_order"] == true && est["is_exponential_order"] == false, "cli estimate");
    // 12
    const std::string pf = cli.run("pfrac 0:2 1/2:1 -1:3", o);
    o.require(l2t::testing::times_denominator(io::parse_sexpr(pf), {{0, 2}, {Rational(1, 2), 1}, {-1, 3}}) ==
                  l2t::testing::SigmaPoly::constant(1),
              "cli pfrac");
    // error codes
    cli.expect_exit("quad " + d("exp_x2.json") + " --s 1", 3, "DivergentIntegral", o);
    cli.expect_exit("transform " + d("bad_rational.json"), 2, "SchemaError", o);
    cli.expect_exit("invert " + d("impulse.json"), 4, "ImpulseContent", o);
    cli.expect_exit("residual --family A --grid 0,2,10,0.5,2,10", 2, "GridDomain", o);

    if (o.pass) o.detail = std::to_string(cli.runs()) + " command checks, outputs byte-stable, exit codes 2/3/4";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"transform-pair exactness", transform_pairs},
        {"round trip", round_trip},
        {"operator identities", operator_identities},
        {"quadrature agreement", quadrature_agreement},
        {"convolution theorem", convolution_theorem},
        {"star-power closed form", star_powers},
        {"family A", family_a},
        {"family B derived", family_b},
        {"family D", family_d},
        {"order analysis", order_analysis},
        {"family C residual harness", family_c_harness},
        {"partial fractions", partial_fraction_recombination},
        {"CLI battery", cli_battery},
    };
    int failed = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %2d: %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                    secs);
        failed += !o.pass;
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
