#include <potcap/classify.hpp>
#include <potcap/exponents.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace potcap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string poincare_tag(double q, bool large_radii) {
    std::ostringstream os;
    os << q << "-poincare-" << (large_radii ? "large" : "small") << "-radii";
    return os.str();
}

Verdict inconclusive(std::string basis) {
    return {VerdictState::Inconclusive, std::move(basis), {}};
}

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("classify: need finite p > 1");
}

}  // namespace

std::string to_string(VerdictState s) {
    switch (s) {
        case VerdictState::Member: return "Member";
        case VerdictState::NonMember: return "NonMember";
        case VerdictState::BorderlineIn: return "BorderlineIn";
        case VerdictState::BorderlineOut: return "BorderlineOut";
        case VerdictState::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict singleton_zero(const GrowthFunction& g, double p, const AssumptionProfile& hyp) {
    check_p(p);
    hyp.validate();
    if (!g.at_zero) return inconclusive("no-at-zero-class");
    const AsymptoticClass cls = pole_integrand_class(*g.at_zero, p);
    if (integral_diverges_at_zero(cls.exponent_a, cls.log_exponent_b))
        return {VerdictState::Member, "pole-integral-divergent", {}};
    if (hyp.has_poincare_below(p)) {
        return {VerdictState::NonMember,
                "pole-integral-convergent+poincare",
                {poincare_tag(*hyp.weakest_poincare(false), false), "doubling-from-declared-class"}};
    }
    return inconclusive("needs-below-p-poincare-hypothesis");
}

Verdict is_parabolic(const GrowthFunction& g, double p, const AssumptionProfile& hyp) {
    check_p(p);
    hyp.validate();
    if (!g.at_infinity) return inconclusive("no-at-infinity-class");
    const AsymptoticClass cls = pole_integrand_class(*g.at_infinity, p);
    if (integral_diverges_at_infinity(cls.exponent_a, cls.log_exponent_b))
        return {VerdictState::Member, "tail-integral-divergent", {}};
    if (hyp.has_poincare_below(p, /*large_radii=*/true)) {
        return {VerdictState::NonMember,
                "tail-integral-convergent+poincare",
                {poincare_tag(*hyp.weakest_poincare(true), true), "doubling-from-declared-class"}};
    }
    return inconclusive("needs-below-p-poincare-hypothesis-at-large-radii");
}

Verdict green_bounded(const GrowthFunction& g, double p) {
    check_p(p);
    if (!g.at_zero) return inconclusive("no-at-zero-class");
    const AsymptoticClass cls = pole_integrand_class(*g.at_zero, p);
    if (integral_diverges_at_zero(cls.exponent_a, cls.log_exponent_b))
        return {VerdictState::NonMember, "pole-integral-divergent", {}};
    return {VerdictState::Member, "pole-integral-convergent", {}};
}

Verdict green_in_Ltau(const GrowthFunction& g, double p, double tau) {
    check_p(p);
    if (!(tau > 0.0)) throw std::invalid_argument("green_in_Ltau: need tau > 0");
    if (!g.at_zero) return inconclusive("no-at-zero-class");
    const ExponentReport rep = analytic_exponents(g);
    const double us0 = rep.us0;
    const double b = g.at_zero->log_exponent_b;

    if (p > us0 + kExponentEps)
        return {VerdictState::Member, "bounded-above-critical-dimension", {}};

    if (exponent_eq(p, us0)) {
        if (std::isfinite(tau))
            return {VerdictState::Member, "infinite-threshold-at-critical-dimension", {}};
        // tau = infinity poses the boundedness question; shells behave like k^(-b/(us0-1))
        const double decay = b / (us0 - 1.0);
        if (decay > 1.0 + kExponentEps)
            return {VerdictState::BorderlineIn, "borderline-bounded-shell-sum-convergent", {}};
        return {VerdictState::BorderlineOut, "borderline-bounded-shell-sum-divergent", {}};
    }

    const double tau_p = us0 * (p - 1.0) / (us0 - p);
    if (exponent_eq(tau, tau_p)) {
        // critical shells behave like k^(-b p/(us0-p))
        const double decay = b * p / (us0 - p);
        if (!exponent_eq(decay, 1.0) && decay > 1.0)
            return {VerdictState::BorderlineIn, "borderline-shell-sum-convergent", {}};
        return {VerdictState::BorderlineOut, "borderline-shell-sum-divergent", {}};
    }
    if (tau > tau_p)
        return {VerdictState::NonMember, "supercritical-nonintegrability", {}};
    return {VerdictState::Member, "subcritical-integrability", {}};
}

Verdict gradient_in_Lt(const GrowthFunction& g, double p, double t, const AssumptionProfile& hyp) {
    check_p(p);
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("gradient_in_Lt: need finite t > 0");
    hyp.validate();
    if (!g.at_zero) return inconclusive("no-at-zero-class");
    const ExponentReport rep = analytic_exponents(g);
    const double us0 = rep.us0;
    const double b = g.at_zero->log_exponent_b;
    const bool critical_two_sided = !(b > 0.0);  // us0 meets both one-sided bounds

    auto radial_route = [&](const char* fallback) -> Verdict {
        if (g.radial) {
            const NormResult nr = lnorm_gradient(*g.radial, p, t);
            if (nr.verdict == NormVerdict::Finite)
                return {VerdictState::Member, "radial-exact-norm-finite", {}};
            if (nr.verdict == NormVerdict::Divergent)
                return {VerdictState::NonMember, "radial-exact-norm-divergent", {}};
        }
        return inconclusive(fallback);
    };

    if (us0 <= 1.0 + kExponentEps) {
        // profile is bounded with p-integrable gradient; no finer threshold exists
        if (t <= p + kExponentEps)
            return {VerdictState::Member, "positive-capacity-gradient-in-Lp", {}};
        return radial_route("beyond-Lp-without-threshold");
    }

    const double t_p = us0 * (p - 1.0) / (us0 - 1.0);

    if (p > us0 + kExponentEps) {
        if (t <= p + kExponentEps)
            return {VerdictState::Member, "positive-capacity-gradient-in-Lp", {}};
        return radial_route("beyond-Lp-above-critical-dimension");
    }

    if (exponent_eq(p, us0)) {
        // at the critical dimension t_p == p and the singleton capacity decides
        const bool zero_cap = (b <= p - 1.0 + kExponentEps);
        if (zero_cap) {
            if (t < p * (1.0 - kExponentEps))
                return {VerdictState::Member, "subcritical-gradient-integrability", {}};
            return {VerdictState::NonMember, "critical-dimension-gradient-cutoff", {}};
        }
        if (t <= p + kExponentEps)
            return {VerdictState::Member, "positive-capacity-gradient-in-Lp", {}};
        return radial_route("beyond-Lp-at-critical-dimension");
    }

    // p < us0 from here on
    if (t < t_p * (1.0 - kExponentEps))
        return {VerdictState::Member, "subcritical-gradient-integrability", {}};

    if (t > t_p * (1.0 + kExponentEps)) {
        if (t >= 1.0 - kExponentEps && hyp.has_poincare_at_most(t)) {
            return {VerdictState::NonMember,
                    "supercritical-gradient+poincare",
                    {poincare_tag(*hyp.weakest_poincare(false), false)}};
        }
        return inconclusive("needs-t-poincare-hypothesis");
    }

    // t == t_p borderline
    const double q_hat = rep.lq0 + 1.0 - rep.lq0 / us0;
    if (critical_two_sided && t_p >= 1.0 - kExponentEps && p < q_hat - kExponentEps &&
        hyp.has_poincare_at_most(t_p)) {
        return {VerdictState::NonMember,
                "borderline-gradient-low-p-branch",
                {poincare_tag(*hyp.weakest_poincare(false), false)}};
    }
    if (critical_two_sided && p >= q_hat - kExponentEps && rep.lq0 > 1.0 + kExponentEps &&
        hyp.has_poincare_below(t_p)) {
        return {VerdictState::NonMember,
                "borderline-gradient-high-p-branch",
                {poincare_tag(*hyp.weakest_poincare(false), false)}};
    }
    return radial_route("borderline-without-hypotheses");
}

bool tau_monotonicity_check(const GrowthFunction& g, double p1, double p2) {
    check_p(p1);
    check_p(p2);
    if (!g.at_zero) throw std::invalid_argument("tau_monotonicity_check: no at-zero class");
    const ExponentReport rep = analytic_exponents(g);
    if (!(p1 < p2) || !(p2 < rep.us0 - kExponentEps))
        throw std::invalid_argument("tau_monotonicity_check: need p1 < p2 < us0");
    auto critical_member = [&](double p) {
        const double tau_p = rep.us0 * (p - 1.0) / (rep.us0 - p);
        const VerdictState s = green_in_Ltau(g, p, tau_p).state;
        return s == VerdictState::Member || s == VerdictState::BorderlineIn;
    };
    return !critical_member(p1) || critical_member(p2);
}

}  // namespace potcap
