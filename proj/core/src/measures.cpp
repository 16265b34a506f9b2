#include <potcap/measures.hpp>
#include <potcap/quadrature.hpp>

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace potcap {
namespace {

// Upper incomplete gamma with a large-argument fallback. GSL underflows past
// x ~ 700; there the three-term asymptotic expansion is already exact to 1e-12.
double upper_gamma(double a, double x) {
    if (x <= 600.0) return gsl_sf_gamma_inc(a, x);
    const double c1 = (a - 1.0) / x;
    const double c2 = (a - 1.0) * (a - 2.0) / (x * x);
    return std::pow(x, a - 1.0) * std::exp(-x) * (1.0 + c1 + c2);
}

void check_dim(int n) {
    if (n < 2) throw std::invalid_argument("radial measure: dimension must be >= 2");
}

}  // namespace

void AssumptionProfile::validate() const {
    for (double q : poincare_small_radii)
        if (!(q >= 1.0)) throw std::invalid_argument("assumption profile: Poincare exponent below 1");
    for (double q : poincare_large_radii)
        if (!(q >= 1.0)) throw std::invalid_argument("assumption profile: Poincare exponent below 1");
    if (!(dilation_lambda >= 1.0)) throw std::invalid_argument("assumption profile: dilation constant below 1");
    if (!(reverse_doubling_xi > 1.0)) throw std::invalid_argument("assumption profile: reverse-doubling factor must exceed 1");
}

std::optional<double> AssumptionProfile::weakest_poincare(bool large_radii) const {
    const auto& v = large_radii ? poincare_large_radii : poincare_small_radii;
    if (v.empty()) return std::nullopt;
    return *std::min_element(v.begin(), v.end());
}

bool AssumptionProfile::has_poincare_at_most(double t, bool large_radii) const {
    auto q = weakest_poincare(large_radii);
    return q && *q <= t + kExponentEps;
}

bool AssumptionProfile::has_poincare_below(double p, bool large_radii) const {
    auto q = weakest_poincare(large_radii);
    return q && *q < p - kExponentEps;
}

double surface_area(int n) {
    check_dim(n);
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialMeasure builtin_power(int n, double alpha) {
    check_dim(n);
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("builtin_power: need 0 < alpha < n");
    RadialMeasure m;
    m.dim = n;
    m.omega = surface_area(n);
    m.weight = [alpha](double rho) { return std::pow(rho, -alpha); };
    m.weight_at_zero = AsymptoticClass{-alpha, 0.0, 1.0, Side::AtZero};
    m.weight_at_infinity = AsymptoticClass{-alpha, 0.0, 1.0, Side::AtInfinity};
    const double a = static_cast<double>(n) - alpha;
    const double C = m.omega / a;
    m.closed_form_mass = [a, C](double rho) { return C * std::pow(rho, a); };
    std::ostringstream os;
    os << "power(n=" << n << ",alpha=" << alpha << ")";
    m.name = os.str();
    return m;
}

RadialMeasure builtin_log(int n, double s, double beta) {
    check_dim(n);
    if (!(s > 1.0)) throw std::invalid_argument("builtin_log: need s > 1");
    if (!(beta > 0.0)) throw std::invalid_argument("builtin_log: need beta > 0");
    RadialMeasure m;
    m.dim = n;
    m.omega = surface_area(n);
    const double break_rho = std::exp(-1.0);
    m.weight = [n, s, beta, break_rho](double rho) {
        const double base = std::pow(rho, s - n);
        if (rho <= break_rho) return base * std::pow(-std::log(rho), beta);
        return base;
    };
    m.weight_at_zero = AsymptoticClass{s - n, beta, 1.0, Side::AtZero};
    m.weight_at_infinity = AsymptoticClass{s - n, 0.0, 1.0, Side::AtInfinity};

    // int_0^rho sigma^{s-1} |log sigma|^beta d(sigma) = s^{-(1+beta)} Gamma(1+beta, s|log rho|)
    const double omega = m.omega;
    const double mass_at_break =
        omega * std::pow(s, -(1.0 + beta)) * upper_gamma(1.0 + beta, s);
    m.closed_form_mass = [omega, s, beta, break_rho, mass_at_break](double rho) {
        if (rho <= break_rho)
            return omega * std::pow(s, -(1.0 + beta)) * upper_gamma(1.0 + beta, s * (-std::log(rho)));
        return mass_at_break + omega / s * (std::pow(rho, s) - std::exp(-s));
    };
    std::ostringstream os;
    os << "log(n=" << n << ",s=" << s << ",beta=" << beta << ")";
    m.name = os.str();
    return m;
}

GrowthFunction builtin_ahlfors(double Q) {
    if (!(Q > 1.0)) throw std::invalid_argument("builtin_ahlfors: need Q > 1");
    GrowthFunction g;
    g.evaluate = [Q](double rho) { return std::pow(rho, Q); };
    g.at_zero = AsymptoticClass{Q, 0.0, 1.0, Side::AtZero};
    g.at_infinity = AsymptoticClass{Q, 0.0, 1.0, Side::AtInfinity};
    g.anchor_radius = 1.0;
    g.ratio_kappa = 1.0 + 1e-7;
    std::ostringstream os;
    os << "ahlfors(Q=" << Q << ")";
    g.name = os.str();
    return g;
}

GrowthFunction growth_from_table(const std::vector<std::pair<double, double>>& points,
                                 std::optional<AsymptoticClass> at_zero,
                                 std::optional<AsymptoticClass> at_infinity) {
    if (points.size() < 2) throw std::invalid_argument("growth table: need at least 2 points");
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    double prev_rho = 0.0, prev_f = 0.0;
    for (const auto& [rho, f] : points) {
        if (!(rho > prev_rho)) throw std::invalid_argument("growth table: radii must be positive and strictly increasing");
        if (!(f > 0.0) || f < prev_f) throw std::invalid_argument("growth table: values must be positive and nondecreasing");
        xs.push_back(std::log(rho));
        ys.push_back(std::log(f));
        prev_rho = rho;
        prev_f = f;
    }
    GrowthFunction g;
    g.evaluate = [xs = std::move(xs), ys = std::move(ys)](double rho) {
        const double x = std::log(rho);
        size_t hi = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
        // end segments extrapolate
        if (hi == 0) hi = 1;
        if (hi == xs.size()) hi = xs.size() - 1;
        const size_t lo = hi - 1;
        const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
        return std::exp(ys[lo] + t * (ys[hi] - ys[lo]));
    };
    g.at_zero = at_zero;
    g.at_infinity = at_infinity;
    g.anchor_radius = points.front().first;
    g.ratio_kappa = 2.0;  // tabulated data carries no accuracy pledge
    g.name = "table";
    return g;
}

GrowthFunction induced_growth(const RadialMeasure& m) {
    check_dim(m.dim);
    if (!m.weight && !m.closed_form_mass)
        throw std::invalid_argument("induced_growth: measure has neither weight nor mass");

    GrowthFunction g;
    g.radial = std::make_shared<RadialMeasure>(m);
    g.name = m.name.empty() ? "radial-growth" : m.name;

    const int n = m.dim;
    const double omega = m.omega;
    if (m.closed_form_mass) {
        g.evaluate = m.closed_form_mass;
    } else {
        auto weight = m.weight;
        g.evaluate = [weight, n, omega](double rho) {
            if (!(rho > 0.0)) throw std::invalid_argument("growth function: radius must be positive");
            auto shell = [&weight, n](double sigma) {
                return weight(sigma) * std::pow(sigma, n - 1);
            };
            // Work downward in blocks of 8 log-units until the next block is noise.
            const double rel_tol = 1e-10;
            double total = 0.0, hi = rho;
            for (int k = 0; k < 50; ++k) {
                const double lo = hi * std::exp(-8.0);
                const double block = integrate_log(shell, lo, hi, rel_tol);
                total += block;
                if (k >= 1 && block < 0.05 * rel_tol * total) return omega * total;
                hi = lo;
            }
            std::ostringstream os;
            os << "induced_growth: mass integral did not settle near 0 (last interval around "
               << hi << ")";
            throw QuadratureError(os.str());
        };
    }

    auto lift = [n, omega](const AsymptoticClass& wc) {
        const double a = wc.exponent_a + n;
        if (!(a > 0.0))
            throw std::invalid_argument("induced_growth: weight not integrable at 0 (a_w + n <= 0)");
        return AsymptoticClass{a, wc.log_exponent_b, wc.constant_C * omega / a, wc.side};
    };
    if (m.weight_at_zero) g.at_zero = lift(*m.weight_at_zero);
    if (m.weight_at_infinity) g.at_infinity = lift(*m.weight_at_infinity);

    if (g.at_zero) {
        g.anchor_radius = (g.at_zero->log_exponent_b != 0.0) ? std::exp(-1.0) : 1.0;
        const double ratio = g.evaluate(g.anchor_radius) / evaluate_class(*g.at_zero, g.anchor_radius);
        // Correction terms shrink monotonically below the anchor, so the single-point
        // ratio there bounds the whole band; 1.05 absorbs quadrature noise.
        g.ratio_kappa = std::max(ratio, 1.0 / ratio) * 1.05;
    }
    return g;
}

double doubling_ratio_scan(const GrowthFunction& g, double r_min, double r_max, int samples) {
    if (!(0.0 < r_min) || !(2.0 * r_min <= r_max))
        throw std::invalid_argument("doubling_ratio_scan: need 0 < 2 r_min <= r_max");
    if (samples < 2) throw std::invalid_argument("doubling_ratio_scan: need at least 2 samples");
    const double lo = std::log(r_min);
    const double hi = std::log(0.5 * r_max);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double rho = std::exp(lo + (hi - lo) * i / (samples - 1));
        const double f1 = g.evaluate(rho);
        const double f2 = g.evaluate(2.0 * rho);
        if (!(f1 > 0.0)) throw std::invalid_argument("doubling_ratio_scan: growth function not positive");
        worst = std::max(worst, f2 / f1);
    }
    return worst;
}

}  // namespace potcap
