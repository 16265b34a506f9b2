#include "verify_suite.hpp"

#include <potcap/capacity.hpp>
#include <potcap/classify.hpp>
#include <potcap/exponents.hpp>
#include <potcap/green.hpp>
#include <potcap/measures.hpp>
#include <potcap/model_io.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace potcap;

// shared flags; every subcommand falls through to these
struct Ctx {
    std::string model;
    std::string format = "json";
    std::string out;
    double tol = 1e-9;
    std::uint64_t seed = 20260825ull;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(std::string body, const std::string& out_path) {
    if (body.empty() || body.back() != '\n') body += '\n';
    if (out_path.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << body;
}

std::string csv_table(const std::vector<std::vector<std::string>>& rows) {
    std::string text;
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += row[i];
        }
        text += '\n';
    }
    return text;
}

void emit_report(const json& j, const std::vector<std::vector<std::string>>& csv, const Ctx& ctx) {
    emit(ctx.format == "csv" ? csv_table(csv) : j.dump(2), ctx.out);
}

std::string opt_num(const std::optional<double>& v) {
    if (!v) return "-";
    return std::isinf(*v) ? "inf" : fmt(*v);
}

int run_exponents(const Ctx& ctx, std::optional<double> p, bool empirical, double r_lo,
                  double r_hi, int grid_points) {
    const ParsedModel model = load_model(ctx.model);
    const ExponentReport rep = analytic_exponents(model.growth);
    json j;
    j["exponents"] = to_json(rep);
    std::vector<std::vector<std::string>> csv{{"key", "value"}};
    csv.push_back({"ls0", fmt(rep.ls0)});
    csv.push_back({"us0", fmt(rep.us0)});
    csv.push_back({"lq0", fmt(rep.lq0)});
    csv.push_back({"uq0", fmt(rep.uq0)});

    if (p) {
        const CriticalExponents ce = critical_exponents(rep, *p);
        j["critical"] = to_json(ce);
        csv.push_back({"p", fmt(ce.p)});
        csv.push_back({"tau_p", opt_num(ce.tau_p)});
        csv.push_back({"t_p", opt_num(ce.t_p)});
        csv.push_back({"q_hat", opt_num(ce.q_hat)});
    }
    if (empirical) {
        const ExponentReport emp = empirical_exponents(model.growth, r_lo, r_hi, grid_points);
        j["empirical"] = to_json(emp);
        csv.push_back({"empirical_us0", fmt(emp.us0)});
    }
    emit_report(j, csv, ctx);
    return 0;
}

int run_capacity(const Ctx& ctx, double p, std::vector<double> rs, std::vector<double> Rs,
                 const std::string& method, int grid_n) {
    const ParsedModel model = load_model(ctx.model);
    const bool radial = model.is_radial();
    if ((method == "exact" || method == "variational") && !radial)
        throw std::invalid_argument("method '" + method + "' needs a radial model");
    if (rs.size() != Rs.size() && rs.size() != 1 && Rs.size() != 1)
        throw std::invalid_argument("-r and -R sweeps must have equal length (or one scalar)");

    std::vector<std::string> methods;
    if (method == "auto") {
        methods = {radial ? "exact" : "integral"};
    } else if (method == "all") {
        methods = {"integral"};
        if (radial) methods.push_back("exact");
        methods.push_back("dyadic");
        if (radial) methods.push_back("variational");
    } else {
        methods = {method};
    }

    json rows = json::array();
    std::vector<std::vector<std::string>> csv{
        {"r", "R", "p", "method", "value", "error_estimate", "flag"}};
    const size_t count = std::max(rs.size(), Rs.size());
    for (size_t i = 0; i < count; ++i) {
        const double r = rs[rs.size() == 1 ? 0 : i];
        const double R = Rs[Rs.size() == 1 ? 0 : i];
        const CapacityQuery q{p, r, R};
        std::optional<double> exact_value;
        std::vector<CapacityResult> results;
        for (const std::string& meth : methods) {
            CapacityResult cr;
            if (meth == "integral") cr = integral_estimate(model.growth, q, ctx.tol);
            else if (meth == "exact") cr = exact_radial(model.measure(), q, ctx.tol);
            else if (meth == "dyadic") cr = dyadic_upper(model.growth, q);
            else cr = variational_radial(model.measure(), q, grid_n);
            if (meth == "exact") exact_value = cr.value;
            results.push_back(cr);
        }
        for (size_t k = 0; k < results.size(); ++k) {
            const CapacityResult& cr = results[k];
            json row = to_json(cr);
            row["r"] = r;
            row["R"] = R;
            row["p"] = p;
            if (method == "all" && exact_value) row["ratio_to_exact"] = cr.value / *exact_value;
            rows.push_back(std::move(row));
            csv.push_back({fmt(r), fmt(R), fmt(p), methods[k], fmt(cr.value),
                           fmt(cr.abs_error_estimate),
                           cr.hypothesis_met ? "" : "hypothesis-violation"});
        }
    }
    json j;
    j["rows"] = std::move(rows);
    emit_report(j, csv, ctx);
    return 0;
}

int run_green_profile(const Ctx& ctx, double p, std::vector<double> rhos, double rho_min,
                      double rho_max, int samples) {
    const ParsedModel model = load_model(ctx.model);
    const GreenProfile prof(model.measure(), p);
    if (rhos.empty()) {
        if (!(0.0 < rho_min && rho_min < rho_max && rho_max <= 1.0))
            throw std::invalid_argument("need 0 < rho-min < rho-max <= 1");
        const double llo = std::log(rho_min), lhi = std::log(rho_max);
        for (int i = 0; i < samples; ++i)
            rhos.push_back(std::exp(llo + (lhi - llo) * i / (samples - 1)));
        rhos.back() = rho_max;
    }
    json rows = json::array();
    std::vector<std::vector<std::string>> csv{{"rho", "value", "gradient"}};
    for (double rho : rhos) {
        const double u = prof.value(rho), g = prof.gradient(rho);
        rows.push_back({{"rho", rho}, {"value", u}, {"gradient", g}});
        csv.push_back({fmt(rho), fmt(u), fmt(g)});
    }
    json j;
    j["rows"] = std::move(rows);
    emit_report(j, csv, ctx);
    return 0;
}

int run_green_norms(const Ctx& ctx, double p, std::optional<double> tau, std::optional<double> t,
                    bool numeric) {
    const ParsedModel model = load_model(ctx.model);
    const RadialMeasure& m = model.measure();
    if (!tau && !t) throw std::invalid_argument("need --tau and/or --t");
    const NormMode mode = numeric ? NormMode::ForceNumeric : NormMode::Auto;
    json j;
    std::vector<std::vector<std::string>> csv{{"kind", "exponent", "verdict", "value", "basis"}};
    auto add = [&](const char* key, const char* kind, const NormResult& nr) {
        j[key] = to_json(nr);
        csv.push_back({kind, fmt(nr.exponent), to_string(nr.verdict),
                       nr.verdict == NormVerdict::Finite ? fmt(nr.value) : to_string(nr.verdict),
                       nr.basis});
    };
    if (tau) add("u_norm", "u", lnorm_u(m, p, *tau, mode));
    if (t) add("gradient_norm", "gradient", lnorm_gradient(m, p, *t, mode));
    emit_report(j, csv, ctx);
    return 0;
}

int run_classify(const Ctx& ctx, double p, const std::string& question, std::optional<double> tau,
                 std::optional<double> t, const AssumptionProfile& hyp) {
    const ParsedModel model = load_model(ctx.model);
    const GrowthFunction& g = model.growth;
    Verdict v;
    if (question == "singleton_zero") {
        v = singleton_zero(g, p, hyp);
    } else if (question == "is_parabolic") {
        v = is_parabolic(g, p, hyp);
    } else if (question == "green_bounded") {
        v = green_bounded(g, p);
    } else if (question == "green_in_Ltau") {
        if (!tau) throw std::invalid_argument("green_in_Ltau needs --tau");
        v = green_in_Ltau(g, p, *tau);
    } else if (question == "gradient_in_Lt") {
        if (!t) throw std::invalid_argument("gradient_in_Lt needs --t");
        v = gradient_in_Lt(g, p, *t, hyp);
    } else {
        throw std::invalid_argument("unknown question key: " + question);
    }
    json j = to_json(v);
    j["question"] = question;
    std::string tags;
    for (size_t i = 0; i < v.hypotheses_used.size(); ++i)
        tags += (i ? ";" : "") + v.hypotheses_used[i];
    std::vector<std::vector<std::string>> csv{{"question", "state", "basis", "hypotheses"},
                                              {question, to_string(v.state), v.basis, tags}};
    emit_report(j, csv, ctx);
    return 0;
}

int run_verify(const Ctx& ctx, const std::string& only, double inject_beta) {
    const verify::SuiteReport rep = verify::run_examples(only, ctx.seed, inject_beta);
    json rows = json::array();
    std::vector<std::vector<std::string>> csv{{"example", "label", "expected", "observed", "pass"}};
    for (const verify::Row& r : rep.rows) {
        rows.push_back({{"example", r.example},
                        {"label", r.label},
                        {"expected", r.expected},
                        {"observed", r.observed},
                        {"pass", r.pass}});
        csv.push_back({r.example, r.label, r.expected, r.observed, r.pass ? "true" : "false"});
    }
    json j;
    j["rows"] = std::move(rows);
    j["all_pass"] = rep.all_pass();
    emit_report(j, csv, ctx);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial capacity estimates, singular p-harmonic profiles, and integrability "
                 "classification for weighted models"};
    app.require_subcommand(1);

    Ctx ctx;
    app.add_option("--model", ctx.model, "model spec: path to a JSON file, or inline JSON");
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", ctx.out, "write the report here instead of stdout");
    app.add_option("--tol", ctx.tol, "relative quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", ctx.seed, "seed for the randomized verification rows")
        ->capture_default_str();

    int exit_code = 0;

    auto* exponents = app.add_subcommand("exponents", "growth exponents and critical thresholds");
    exponents->fallthrough();
    struct {
        std::optional<double> p;
        bool empirical = false;
        double r_lo = 1e-6, r_hi = 1e-2;
        int grid_points = 33;
    } ex;
    exponents->add_option("-p,--p", ex.p, "also report the critical exponents for this p");
    exponents->add_flag("--empirical", ex.empirical, "append a log-log slope cross-check");
    exponents->add_option("--r-lo", ex.r_lo, "empirical fit window, lower radius")
        ->capture_default_str();
    exponents->add_option("--r-hi", ex.r_hi, "empirical fit window, upper radius")
        ->capture_default_str();
    exponents->add_option("--grid-points", ex.grid_points, "empirical fit sample count")
        ->check(CLI::Range(8, 100000))
        ->capture_default_str();
    exponents->callback(
        [&] { exit_code = run_exponents(ctx, ex.p, ex.empirical, ex.r_lo, ex.r_hi, ex.grid_points); });

    auto* capacity = app.add_subcommand("capacity", "condenser capacity of annuli");
    capacity->fallthrough();
    struct {
        double p = 2.0;
        std::vector<double> rs, Rs;
        std::string method = "auto";
        int grid = 1024;
    } ca;
    capacity->add_option("-p,--p", ca.p, "exponent p > 1")->required();
    capacity->add_option("-r,--inner", ca.rs, "inner radii (comma separated sweep)")
        ->required()
        ->delimiter(',');
    capacity->add_option("-R,--outer", ca.Rs, "outer radii (comma separated sweep)")
        ->required()
        ->delimiter(',');
    capacity->add_option("--method", ca.method, "estimate to run")
        ->check(CLI::IsMember({"auto", "integral", "exact", "dyadic", "variational", "all"}))
        ->capture_default_str();
    capacity->add_option("--grid", ca.grid, "variational grid intervals")
        ->check(CLI::Range(16, 1 << 22))
        ->capture_default_str();
    capacity->callback([&] { exit_code = run_capacity(ctx, ca.p, ca.rs, ca.Rs, ca.method, ca.grid); });

    auto* profile = app.add_subcommand("green-profile", "singular profile values and gradients");
    profile->fallthrough();
    struct {
        double p = 2.0;
        std::vector<double> rhos;
        double rho_min = 1e-6, rho_max = 1.0;
        int samples = 129;
    } pr;
    profile->add_option("-p,--p", pr.p, "exponent p > 1")->required();
    profile->add_option("--rho", pr.rhos, "explicit radii (overrides the log-spaced grid)")
        ->delimiter(',');
    profile->add_option("--rho-min", pr.rho_min, "grid lower end")->capture_default_str();
    profile->add_option("--rho-max", pr.rho_max, "grid upper end")->capture_default_str();
    profile->add_option("--samples", pr.samples, "grid size")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    profile->callback(
        [&] { exit_code = run_green_profile(ctx, pr.p, pr.rhos, pr.rho_min, pr.rho_max, pr.samples); });

    auto* norms = app.add_subcommand("green-norms", "integral norms of the profile and its gradient");
    norms->fallthrough();
    struct {
        double p = 2.0;
        std::optional<double> tau, t;
        bool numeric = false;
    } no;
    norms->add_option("-p,--p", no.p, "exponent p > 1")->required();
    norms->add_option("--tau", no.tau, "L^tau norm of the profile");
    norms->add_option("--t", no.t, "L^t norm of the gradient");
    norms->add_flag("--numeric", no.numeric, "force the shell partial-sum route");
    norms->callback([&] { exit_code = run_green_norms(ctx, no.p, no.tau, no.t, no.numeric); });

    auto* classify = app.add_subcommand("classify", "integrability and parabolicity verdicts");
    classify->fallthrough();
    struct {
        double p = 2.0;
        std::string question;
        std::optional<double> tau, t;
        std::vector<double> poincare_small, poincare_large;
        double dilation = 1.0, xi = 2.0;
    } cl;
    classify->add_option("-p,--p", cl.p, "exponent p > 1")->required();
    classify->add_option("--question", cl.question,
                         "one of: singleton_zero, is_parabolic, green_bounded, green_in_Ltau, "
                         "gradient_in_Lt")
        ->required();
    classify->add_option("--tau", cl.tau, "exponent for green_in_Ltau");
    classify->add_option("--t", cl.t, "exponent for gradient_in_Lt");
    classify->add_option("--poincare-small", cl.poincare_small,
                         "declare q-Poincare inequalities at small radii")
        ->delimiter(',');
    classify->add_option("--poincare-large", cl.poincare_large,
                         "declare q-Poincare inequalities at large radii")
        ->delimiter(',');
    classify->add_option("--dilation", cl.dilation, "Poincare dilation constant")
        ->capture_default_str();
    classify->add_option("--reverse-doubling", cl.xi, "reverse-doubling scale")
        ->capture_default_str();
    classify->callback([&] {
        AssumptionProfile hyp;
        hyp.poincare_small_radii = cl.poincare_small;
        hyp.poincare_large_radii = cl.poincare_large;
        hyp.dilation_lambda = cl.dilation;
        hyp.reverse_doubling_xi = cl.xi;
        exit_code = run_classify(ctx, cl.p, cl.question, cl.tau, cl.t, hyp);
    });

    auto* verify = app.add_subcommand("verify-examples", "run the built-in regression tables");
    verify->fallthrough();
    std::string only;
    double inject_beta = 0.0;
    verify->add_option("--only", only, "restrict to one example id");
    verify->add_option("--inject-beta", inject_beta,
                       "self-test hook: wrong log exponent for the ex-log table")
        ->group("");
    verify->callback([&] { exit_code = run_verify(ctx, only, inject_beta); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
