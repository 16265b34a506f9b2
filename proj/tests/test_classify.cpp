#include <doctest.h>

#include <potcap/classify.hpp>
#include <potcap/measures.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace potcap;

namespace {

bool uses(const Verdict& v, const std::string& tag) {
    return std::find(v.hypotheses_used.begin(), v.hypotheses_used.end(), tag) !=
           v.hypotheses_used.end();
}

}  // namespace

TEST_CASE("zero capacity of the center point") {
    auto glog1 = induced_growth(builtin_log(3, 3.0, 1.0));
    // divergent pole integral decides unconditionally
    for (double p : {2.0, 3.0}) {
        auto v = singleton_zero(glog1, p);
        CHECK(v.state == VerdictState::Member);
        CHECK(v.basis == "pole-integral-divergent");
        CHECK(v.hypotheses_used.empty());
    }

    // convergent pole integral needs the below-p hypothesis for the converse
    auto glog25 = induced_growth(builtin_log(3, 3.0, 2.5));
    auto bare = singleton_zero(glog25, 3.0);
    CHECK(bare.state == VerdictState::Inconclusive);
    CHECK(bare.basis == "needs-below-p-poincare-hypothesis");

    AssumptionProfile hyp;
    hyp.poincare_small_radii = {1.5};
    auto gated = singleton_zero(glog25, 3.0, hyp);
    CHECK(gated.state == VerdictState::NonMember);
    CHECK(gated.basis == "pole-integral-convergent+poincare");
    CHECK(uses(gated, "1.5-poincare-small-radii"));
    CHECK(uses(gated, "doubling-from-declared-class"));

    auto ga2 = builtin_ahlfors(2.0);
    CHECK(singleton_zero(ga2, 2.0).state == VerdictState::Member);
    CHECK(singleton_zero(ga2, 3.0).state == VerdictState::Inconclusive);
    CHECK(singleton_zero(ga2, 3.0, hyp).state == VerdictState::NonMember);

    auto table = growth_from_table({{0.1, 0.01}, {1.0, 1.0}});
    CHECK(singleton_zero(table, 2.0).state == VerdictState::Inconclusive);
    CHECK(singleton_zero(table, 2.0).basis == "no-at-zero-class");

    AssumptionProfile bad;
    bad.poincare_small_radii = {0.5};
    CHECK_THROWS_AS(singleton_zero(ga2, 2.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(singleton_zero(ga2, 1.0), std::invalid_argument);
}

TEST_CASE("parabolicity across a growth-exponent grid") {
    AssumptionProfile hyp;
    hyp.poincare_large_radii = {1.2};
    for (double Q : {1.5, 2.0, 2.5, 3.0, 3.5}) {
        auto g = builtin_ahlfors(Q);
        for (double p : {2.0, 3.0}) {
            auto v = is_parabolic(g, p, hyp);
            if (Q <= p) {
                CHECK(v.state == VerdictState::Member);
                CHECK(v.basis == "tail-integral-divergent");
            } else {
                CHECK(v.state == VerdictState::NonMember);
                CHECK(v.basis == "tail-integral-convergent+poincare");
                CHECK(uses(v, "1.2-poincare-large-radii"));
            }
        }
    }

    // without the large-radii hypothesis the hyperbolic side stays open
    auto open = is_parabolic(builtin_ahlfors(3.0), 2.0);
    CHECK(open.state == VerdictState::Inconclusive);
    CHECK(open.basis == "needs-below-p-poincare-hypothesis-at-large-radii");

    // the log weight is a pure power at large radii: parabolic exactly at p = s
    CHECK(is_parabolic(induced_growth(builtin_log(3, 3.0, 1.0)), 3.0).state ==
          VerdictState::Member);

    auto table = growth_from_table({{0.1, 0.01}, {1.0, 1.0}});
    CHECK(is_parabolic(table, 2.0).basis == "no-at-infinity-class");
}

TEST_CASE("profile boundedness negates the zero-capacity answer") {
    AssumptionProfile strong;
    strong.poincare_small_radii = {1.1};
    std::vector<GrowthFunction> models;
    models.push_back(induced_growth(builtin_log(3, 3.0, 1.0)));
    models.push_back(induced_growth(builtin_log(3, 3.0, 2.5)));
    models.push_back(induced_growth(builtin_power(3, 1.0)));
    models.push_back(builtin_ahlfors(2.0));
    for (const auto& g : models) {
        for (double p : {1.5, 2.0, 2.5, 3.0, 3.5}) {
            const auto gb = green_bounded(g, p).state;
            const auto sz = singleton_zero(g, p, strong).state;
            if (gb == VerdictState::Member) CHECK(sz == VerdictState::NonMember);
            if (gb == VerdictState::NonMember) CHECK(sz == VerdictState::Member);
        }
    }
}

TEST_CASE("integrability of the profile against the measure") {
    auto gp = induced_growth(builtin_power(3, 1.0));   // exponent 2, no log factor
    auto gl = induced_growth(builtin_log(3, 3.0, 1.0));  // exponent 3, log power 1

    // subcritical and supercritical sides
    CHECK(green_in_Ltau(gp, 1.5, 1.0).state == VerdictState::Member);
    CHECK(green_in_Ltau(gp, 1.5, 1.0).basis == "subcritical-integrability");
    CHECK(green_in_Ltau(gp, 1.5, 3.0).state == VerdictState::NonMember);
    CHECK(green_in_Ltau(gp, 1.5, 3.0).basis == "supercritical-nonintegrability");

    // at the threshold the log power decides: decay = b p/(us0 - p)
    CHECK(green_in_Ltau(gp, 1.5, 2.0).state == VerdictState::BorderlineOut);
    CHECK(green_in_Ltau(gl, 1.4, 0.75).state == VerdictState::BorderlineOut);
    const double tau_p_2 = 3.0 * 1.0 / 1.0;
    auto crit = green_in_Ltau(gl, 2.0, tau_p_2);
    CHECK(crit.state == VerdictState::BorderlineIn);
    CHECK(crit.basis == "borderline-shell-sum-convergent");

    // above the growth exponent everything is bounded
    auto bounded = green_in_Ltau(gp, 2.5, 100.0);
    CHECK(bounded.state == VerdictState::Member);
    CHECK(bounded.basis == "bounded-above-critical-dimension");

    // at the growth exponent every finite tau works
    auto at_dim = green_in_Ltau(gl, 3.0, 50.0);
    CHECK(at_dim.state == VerdictState::Member);
    CHECK(at_dim.basis == "infinite-threshold-at-critical-dimension");

    // tau = infinity there poses boundedness: decided by b/(us0 - 1)
    const double inf = std::numeric_limits<double>::infinity();
    auto unbounded = green_in_Ltau(gl, 3.0, inf);
    CHECK(unbounded.state == VerdictState::BorderlineOut);
    CHECK(unbounded.basis == "borderline-bounded-shell-sum-divergent");
    auto stays = green_in_Ltau(induced_growth(builtin_log(3, 3.0, 2.5)), 3.0, inf);
    CHECK(stays.state == VerdictState::BorderlineIn);
    CHECK(stays.basis == "borderline-bounded-shell-sum-convergent");

    CHECK_THROWS_AS(green_in_Ltau(gp, 1.5, 0.0), std::invalid_argument);
    auto table = growth_from_table({{0.1, 0.01}, {1.0, 1.0}});
    CHECK(green_in_Ltau(table, 1.5, 1.0).basis == "no-at-zero-class");
}

TEST_CASE("membership flips exactly once along the tau ladder") {
    auto gl = induced_growth(builtin_log(3, 3.0, 1.0));
    bool seen_out = false;
    for (double tau : {1.0, 2.0, 2.9, 3.0, 3.1, 5.0}) {
        const auto s = green_in_Ltau(gl, 2.0, tau).state;
        const bool in = s == VerdictState::Member || s == VerdictState::BorderlineIn;
        if (seen_out) CHECK_FALSE(in);
        if (!in) seen_out = true;
    }
    CHECK(seen_out);  // the ladder does cross the threshold
}

TEST_CASE("gradient integrability for abstract regular growth") {
    auto g = builtin_ahlfors(3.0);  // t_p = 1.5 at p = 2
    AssumptionProfile hyp16, hyp15;
    hyp16.poincare_small_radii = {1.6};
    hyp15.poincare_small_radii = {1.5};

    auto sub = gradient_in_Lt(g, 2.0, 1.4);
    CHECK(sub.state == VerdictState::Member);
    CHECK(sub.basis == "subcritical-gradient-integrability");

    auto super = gradient_in_Lt(g, 2.0, 1.6, hyp16);
    CHECK(super.state == VerdictState::NonMember);
    CHECK(super.basis == "supercritical-gradient+poincare");
    CHECK(uses(super, "1.6-poincare-small-radii"));

    auto open = gradient_in_Lt(g, 2.0, 1.6);
    CHECK(open.state == VerdictState::Inconclusive);
    CHECK(open.basis == "needs-t-poincare-hypothesis");

    auto border = gradient_in_Lt(g, 2.0, 1.5, hyp15);
    CHECK(border.state == VerdictState::NonMember);
    CHECK(border.basis == "borderline-gradient-low-p-branch");

    auto stuck = gradient_in_Lt(g, 2.0, 1.5);
    CHECK(stuck.state == VerdictState::Inconclusive);
    CHECK(stuck.basis == "borderline-without-hypotheses");

    AssumptionProfile bad;
    bad.poincare_small_radii = {0.5};
    CHECK_THROWS_AS(gradient_in_Lt(g, 2.0, 1.5, bad), std::invalid_argument);
    CHECK_THROWS_AS(gradient_in_Lt(g, 2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gradient_in_Lt(g, 2.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("gradient integrability at the critical dimension") {
    // b <= p-1: the center has zero capacity and t_p == p is the cutoff
    auto gl1 = induced_growth(builtin_log(3, 3.0, 1.0));
    CHECK(gradient_in_Lt(gl1, 3.0, 2.9).state == VerdictState::Member);
    auto cut = gradient_in_Lt(gl1, 3.0, 3.0);
    CHECK(cut.state == VerdictState::NonMember);
    CHECK(cut.basis == "critical-dimension-gradient-cutoff");

    // b > p-1: positive capacity keeps the gradient in L^p; beyond that the
    // radial norm decides
    auto gl25 = induced_growth(builtin_log(3, 3.0, 2.5));
    auto inlp = gradient_in_Lt(gl25, 3.0, 3.0);
    CHECK(inlp.state == VerdictState::Member);
    CHECK(inlp.basis == "positive-capacity-gradient-in-Lp");
    auto beyond = gradient_in_Lt(gl25, 3.0, 3.5);
    CHECK(beyond.state == VerdictState::NonMember);
    CHECK(beyond.basis == "radial-exact-norm-divergent");
}

TEST_CASE("radial models resolve the gradient borderline exactly") {
    // beta = 2.5 converges at t_p, beta = 1 diverges; no hypotheses involved
    auto fine = gradient_in_Lt(induced_growth(builtin_log(3, 3.0, 2.5)), 2.0, 1.5);
    CHECK(fine.state == VerdictState::Member);
    CHECK(fine.basis == "radial-exact-norm-finite");
    CHECK(fine.hypotheses_used.empty());

    auto rough = gradient_in_Lt(induced_growth(builtin_log(3, 3.0, 1.0)), 2.0, 1.5);
    CHECK(rough.state == VerdictState::NonMember);
    CHECK(rough.basis == "radial-exact-norm-divergent");
}

TEST_CASE("gradient membership above the growth exponent") {
    auto gp = induced_growth(builtin_power(3, 1.0));  // growth exponent 2
    CHECK(gradient_in_Lt(gp, 2.5, 2.4).basis == "positive-capacity-gradient-in-Lp");
    CHECK(gradient_in_Lt(gp, 2.5, 3.0).basis == "radial-exact-norm-divergent");
    // same question without a radial model behind the growth stays open
    CHECK(gradient_in_Lt(builtin_ahlfors(2.0), 2.5, 3.0).basis ==
          "beyond-Lp-above-critical-dimension");
}

TEST_CASE("critical membership improves with p") {
    auto gl = induced_growth(builtin_log(3, 3.0, 1.0));
    CHECK(tau_monotonicity_check(gl, 1.2, 2.0));
    CHECK(tau_monotonicity_check(gl, 1.6, 2.0));
    CHECK(tau_monotonicity_check(induced_growth(builtin_power(3, 1.0)), 1.2, 1.5));

    CHECK_THROWS_AS(tau_monotonicity_check(gl, 2.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(tau_monotonicity_check(gl, 2.0, 1.5), std::invalid_argument);

    // randomized sweep over declared power-log classes
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(1.3, 4.0), ub(-3.0, 3.0), uu(0.0, 1.0);
    int done = 0;
    while (done < 200) {
        const double a = ua(rng), b = ub(rng);
        const double lo = 1.05, hi = a - 0.05;
        double x = lo + (hi - lo) * uu(rng), y = lo + (hi - lo) * uu(rng);
        const double p1 = std::min(x, y), p2 = std::max(x, y);
        if (p2 - p1 < 1e-6) continue;
        GrowthFunction g;
        g.evaluate = [a, b](double rho) { return powlog(rho, a, b); };
        g.at_zero = AsymptoticClass{a, b, 1.0, Side::AtZero};
        CHECK(tau_monotonicity_check(g, p1, p2));
        ++done;
    }
}
