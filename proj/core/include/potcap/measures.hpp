#pragma once

#include <potcap/asymptotics.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace potcap {

struct RadialMeasure;

// Ball-mass function rho -> mu(B_rho) of a measure centered at the distinguished point,
// together with declared asymptotic metadata. `evaluate` must be positive and
// nondecreasing; the at_zero / at_infinity classes are declarative and are what the
// symbolic classifiers consume.
struct GrowthFunction {
    std::function<double(double)> evaluate;
    std::optional<AsymptoticClass> at_zero;
    std::optional<AsymptoticClass> at_infinity;

    // at_zero is declared accurate within [1/ratio_kappa, ratio_kappa] for rho <= anchor_radius
    double anchor_radius = 1.0;
    double ratio_kappa = 1.0;

    // set when this growth function was induced from a radial weight; enables exact
    // radial routes (capacity, Green norms) downstream
    std::shared_ptr<const RadialMeasure> radial;

    std::string name;
};

// Weighted R^n model: d(mu) = w(|x|) dx with w positive on (0, infinity).
struct RadialMeasure {
    int dim = 3;                             // n >= 2
    std::function<double(double)> weight;    // w(rho)
    double omega = 0.0;                      // surface area of S^{n-1}; stored, not recomputed
    std::optional<AsymptoticClass> weight_at_zero;      // class of w at 0
    std::optional<AsymptoticClass> weight_at_infinity;  // class of w at infinity
    std::function<double(double)> closed_form_mass;     // mu(B_rho) when known analytically
    std::string name;
};

// User-asserted hypotheses consumed by the classifiers. Declaring an exponent q in a
// Poincare set asserts a q-Poincare inequality at the distinguished point on the
// corresponding radius range; inequalities improve upward, so any declared q <= t
// yields a t-Poincare inequality.
struct AssumptionProfile {
    std::vector<double> poincare_small_radii;
    std::vector<double> poincare_large_radii;
    double dilation_lambda = 1.0;
    double reverse_doubling_xi = 2.0;

    void validate() const;  // exponents >= 1, lambda >= 1, xi > 1
    bool has_poincare_at_most(double t, bool large_radii = false) const;   // some q <= t
    bool has_poincare_below(double p, bool large_radii = false) const;     // some q < p (strict)
    std::optional<double> weakest_poincare(bool large_radii = false) const;
};

// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)
double surface_area(int n);

// w = rho^{-alpha}, 0 < alpha < n. Mass is exact: omega/(n-alpha) * rho^{n-alpha}.
RadialMeasure builtin_power(int n, double alpha);

// w = rho^{s-n} |log rho|^beta for rho <= 1/e, w = rho^{s-n} beyond (continuous join).
// Requires s > 1, beta > 0. Mass via upper incomplete gamma.
RadialMeasure builtin_log(int n, double s, double beta);

// Abstract Q-regular growth rho^Q, Q > 1. No radial weight behind it.
GrowthFunction builtin_ahlfors(double Q);

// Tabulated growth: log-log piecewise-linear through (rho_i, f_i), end segments
// extrapolate. Classes, when supplied, are taken on trust.
GrowthFunction growth_from_table(const std::vector<std::pair<double, double>>& points,
                                 std::optional<AsymptoticClass> at_zero = {},
                                 std::optional<AsymptoticClass> at_infinity = {});

// mu(B_rho) for a radial measure: closed form when installed, otherwise adaptive
// quadrature (relative tolerance 1e-10) in log coordinates with an asymptotic tail
// below the last panel. Also derives the growth classes from the weight classes:
// w ~ C rho^{a_w} |log rho|^{b_w} with a_w + n > 0 gives
// f ~ C*omega/(a_w+n) * rho^{a_w+n} |log rho|^{b_w}.
GrowthFunction induced_growth(const RadialMeasure& m);

// max over a log-spaced grid rho in [r_min, r_max/2] of f(2 rho)/f(rho)
double doubling_ratio_scan(const GrowthFunction& g, double r_min, double r_max,
                           int samples = 257);

}  // namespace potcap
