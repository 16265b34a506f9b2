#include <potcap/exponents.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace potcap {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const ExponentReport& rep) {
    if (!(rep.lq0 <= rep.ls0 + kExponentEps) || !(rep.ls0 <= rep.us0 + kExponentEps) ||
        !(rep.us0 <= rep.uq0 + kExponentEps))
        throw std::logic_error("exponent report violates lq0 <= ls0 <= us0 <= uq0");
}

ExponentReport analytic_exponents(const GrowthFunction& g) {
    if (!g.at_zero)
        throw std::invalid_argument("analytic_exponents: model carries no at-zero class");
    const double a = g.at_zero->exponent_a;
    const double b = g.at_zero->log_exponent_b;
    ExponentReport rep;
    rep.ls0 = rep.us0 = rep.lq0 = rep.uq0 = a;
    rep.us0_in_uS0 = (b >= 0.0);
    rep.us0_in_lS0 = (b <= 0.0);
    rep.source = ExponentSource::Analytic;
    validate(rep);
    return rep;
}

ExponentReport empirical_exponents(const GrowthFunction& g, double r_lo, double r_hi, int k) {
    if (!(0.0 < r_lo) || !(r_lo < r_hi) || !(r_hi <= g.anchor_radius))
        throw std::invalid_argument("empirical_exponents: need 0 < r_lo < r_hi <= anchor radius");
    if (k < 8) throw std::invalid_argument("empirical_exponents: need at least 8 sample points");
    if (r_hi / r_lo < 4.0)
        throw std::invalid_argument("empirical_exponents: degenerate grid, span must cover a factor 4");

    const double x0 = std::log(r_lo), x1 = std::log(r_hi);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < k; ++i) {
        const double x = x0 + (x1 - x0) * i / (k - 1);
        const double f = g.evaluate(std::exp(x));
        if (!(f > 0.0)) throw std::invalid_argument("empirical_exponents: growth function not positive on grid");
        const double y = std::log(f);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);

    ExponentReport rep;
    rep.ls0 = rep.us0 = rep.lq0 = rep.uq0 = slope;
    rep.source = ExponentSource::Empirical;
    validate(rep);
    return rep;
}

CriticalExponents critical_exponents(const ExponentReport& rep, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("critical_exponents: need finite p > 1");
    CriticalExponents c;
    c.p = p;
    const double us0 = rep.us0;
    if (exponent_eq(p, us0)) {
        c.tau_p = kInf;
    } else if (p < us0) {
        c.tau_p = us0 * (p - 1.0) / (us0 - p);
    }  // p > us0: threshold vacuous, left absent
    if (us0 > 1.0 + kExponentEps) {
        c.t_p = us0 * (p - 1.0) / (us0 - 1.0);
        c.q_hat = rep.lq0 + 1.0 - rep.lq0 / us0;
    }
    return c;
}

SuperharmonicThresholds superharmonic_thresholds(double utheta, double p) {
    if (!(utheta >= 1.0)) throw std::invalid_argument("superharmonic_thresholds: need utheta >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("superharmonic_thresholds: need p > 1");
    SuperharmonicThresholds out;
    if (p > utheta + kExponentEps) {
        out.locally_bounded = true;
        return out;
    }
    out.tau_bound = exponent_eq(p, utheta) ? kInf : utheta * (p - 1.0) / (utheta - p);
    // utheta == 1 forces p > utheta, so the division below is safe here
    out.t_bound = utheta * (p - 1.0) / (utheta - 1.0);
    return out;
}

}  // namespace potcap
