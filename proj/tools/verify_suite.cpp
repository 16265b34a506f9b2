#include "verify_suite.hpp"

#include <potcap/capacity.hpp>
#include <potcap/classify.hpp>
#include <potcap/exponents.hpp>
#include <potcap/green.hpp>
#include <potcap/measures.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace potcap::verify {
namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

RadialMeasure unweighted(int n) {
    RadialMeasure m;
    m.dim = n;
    m.omega = surface_area(n);
    m.weight = [](double) { return 1.0; };
    m.weight_at_zero = AsymptoticClass{0.0, 0.0, 1.0, Side::AtZero};
    m.weight_at_infinity = AsymptoticClass{0.0, 0.0, 1.0, Side::AtInfinity};
    const double c = m.omega / n;
    m.closed_form_mass = [n, c](double rho) { return c * std::pow(rho, n); };
    m.name = "unweighted";
    return m;
}

void value_row(SuiteReport& out, const std::string& ex, std::string label, double expected,
               double observed, double rel) {
    out.rows.push_back({ex, std::move(label), num(expected), num(observed),
                        close(expected, observed, rel)});
}

void verdict_row(SuiteReport& out, const std::string& ex, std::string label,
                 VerdictState expected, const Verdict& observed) {
    out.rows.push_back({ex, std::move(label), to_string(expected), to_string(observed.state),
                        expected == observed.state});
}

void run_newtonian(SuiteReport& out, std::uint64_t seed) {
    const RadialMeasure m3 = unweighted(3);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    for (int i = 0; i < 10; ++i) {
        double r = dist(rng), R = dist(rng);
        if (r > R) std::swap(r, R);
        if (R - r < 1e-3) {  // nearly degenerate annulus, redraw
            --i;
            continue;
        }
        const double want = 4.0 * M_PI * r * R / (R - r);
        const double got = exact_radial(m3, CapacityQuery{2.0, r, R}).value;
        value_row(out, "newtonian", "annulus r=" + num(r) + " R=" + num(R), want, got, 1e-8);
    }
    value_row(out, "newtonian", "conformal n=2 r=1 R=e", 2.0 * M_PI,
              exact_radial(unweighted(2), CapacityQuery{2.0, 1.0, std::exp(1.0)}).value, 1e-8);
    for (int n : {2, 3, 4}) {
        const double want = surface_area(n) * std::pow(std::log(4.0), 1.0 - n);
        const double got =
            exact_radial(unweighted(n), CapacityQuery{double(n), 0.5, 2.0}).value;
        value_row(out, "newtonian", "p=n=" + std::to_string(n) + " r=0.5 R=2", want, got, 1e-8);
    }
}

void run_ex_power(SuiteReport& out) {
    const GrowthFunction g = induced_growth(builtin_power(3, 1.0));
    const ExponentReport rep = analytic_exponents(g);
    value_row(out, "ex-power", "lq0", 2.0, rep.lq0, 1e-12);
    value_row(out, "ex-power", "ls0", 2.0, rep.ls0, 1e-12);
    value_row(out, "ex-power", "us0", 2.0, rep.us0, 1e-12);
    value_row(out, "ex-power", "uq0", 2.0, rep.uq0, 1e-12);

    const CriticalExponents ce = critical_exponents(rep, 1.5);
    value_row(out, "ex-power", "tau_p at p=1.5", 2.0, ce.tau_p.value_or(0.0), 1e-12);
    value_row(out, "ex-power", "t_p at p=1.5", 1.0, ce.t_p.value_or(0.0), 1e-12);
    value_row(out, "ex-power", "q_hat", 2.0, ce.q_hat.value_or(0.0), 1e-12);

    const CriticalExponents cc = critical_exponents(rep, 2.0);
    out.rows.push_back({"ex-power", "tau_p at p=us0", "inf",
                        cc.tau_p && std::isinf(*cc.tau_p) ? "inf" : "finite",
                        cc.tau_p.has_value() && std::isinf(*cc.tau_p)});
}

void run_ex_log(SuiteReport& out, double inject_beta) {
    const double beta = inject_beta > 0.0 ? inject_beta : 1.0;
    const GrowthFunction g1 = induced_growth(builtin_log(3, 3.0, beta));
    const ExponentReport rep = analytic_exponents(g1);
    struct Cell { double p; VerdictState want; };
    for (Cell c : {Cell{1.2, VerdictState::BorderlineOut}, Cell{1.4, VerdictState::BorderlineOut},
                   Cell{1.6, VerdictState::BorderlineIn}, Cell{2.0, VerdictState::BorderlineIn},
                   Cell{2.9, VerdictState::BorderlineIn}}) {
        const double tau_p = *critical_exponents(rep, c.p).tau_p;
        verdict_row(out, "ex-log", "beta=1 u in L^tau_p at p=" + num(c.p), c.want,
                    green_in_Ltau(g1, c.p, tau_p));
    }
    verdict_row(out, "ex-log", "beta=1 bounded at p=s", VerdictState::NonMember,
                green_bounded(g1, 3.0));
    verdict_row(out, "ex-log", "beta=2.5 bounded at p=s", VerdictState::Member,
                green_bounded(induced_growth(builtin_log(3, 3.0, 2.5)), 3.0));
}

void run_ex_log_2(SuiteReport& out) {
    struct Cell { double beta; VerdictState want; };
    for (Cell c : {Cell{1.0, VerdictState::NonMember}, Cell{2.0, VerdictState::NonMember},
                   Cell{2.5, VerdictState::Member}, Cell{3.0, VerdictState::Member}}) {
        const GrowthFunction g = induced_growth(builtin_log(3, 3.0, c.beta));
        const double t_p = *critical_exponents(analytic_exponents(g), 2.0).t_p;
        verdict_row(out, "ex-log-2", "beta=" + num(c.beta) + " gradient in L^t_p", c.want,
                    gradient_in_Lt(g, 2.0, t_p));
    }
    // the critical gradient integral does not depend on p
    const RadialMeasure m = builtin_log(3, 3.0, 2.5);
    const GrowthFunction g = induced_growth(m);
    const double ref = lnorm_gradient(m, 2.0, *critical_exponents(analytic_exponents(g), 2.0).t_p).value;
    for (double p : {1.5, 2.5}) {
        const double t_p = *critical_exponents(analytic_exponents(g), p).t_p;
        value_row(out, "ex-log-2", "beta=2.5 norm at t_p for p=" + num(p), ref,
                  lnorm_gradient(m, p, t_p).value, 1e-9);
    }
}

void run_parabolicity(SuiteReport& out) {
    AssumptionProfile hyp;
    hyp.poincare_large_radii = {1.2};
    for (double Q : {1.5, 2.0, 2.5, 3.0, 3.5}) {
        const GrowthFunction g = builtin_ahlfors(Q);
        for (double p : {2.0, 3.0}) {
            const VerdictState want = Q <= p ? VerdictState::Member : VerdictState::NonMember;
            verdict_row(out, "parabolicity-grid", "Q=" + num(Q) + " p=" + num(p), want,
                        is_parabolic(g, p, hyp));
        }
    }
}

}  // namespace

bool SuiteReport::all_pass() const {
    for (const Row& r : rows)
        if (!r.pass) return false;
    return true;
}

SuiteReport run_examples(const std::string& only, std::uint64_t seed, double inject_beta) {
    static const std::vector<std::string> ids = {"newtonian", "ex-power", "ex-log", "ex-log-2",
                                                 "parabolicity-grid"};
    if (!only.empty() && std::find(ids.begin(), ids.end(), only) == ids.end())
        throw std::invalid_argument("unknown example id: " + only);
    auto want = [&only](const char* id) { return only.empty() || only == id; };

    SuiteReport out;
    if (want("newtonian")) run_newtonian(out, seed);
    if (want("ex-power")) run_ex_power(out);
    if (want("ex-log")) run_ex_log(out, inject_beta);
    if (want("ex-log-2")) run_ex_log_2(out);
    if (want("parabolicity-grid")) run_parabolicity(out);
    return out;
}

}  // namespace potcap::verify
