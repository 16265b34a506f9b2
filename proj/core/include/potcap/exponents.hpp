#pragma once

#include <potcap/measures.hpp>

#include <optional>

namespace potcap {

enum class ExponentSource { Analytic, Empirical };

// Growth exponents of mu(B_r) at the distinguished point. ls0/us0 bound the set of s
// with mu(B_r) <= C r^s (resp. >=) near 0; lq0/uq0 are the two-radius ratio variants.
// Always lq0 <= ls0 <= us0 <= uq0. The membership flags say whether us0 itself
// satisfies the one-sided bounds (absent for empirical reports: a slope fit cannot
// see log factors).
struct ExponentReport {
    double ls0 = 0.0;
    double us0 = 0.0;
    double lq0 = 0.0;
    double uq0 = 0.0;
    std::optional<bool> us0_in_uS0;
    std::optional<bool> us0_in_lS0;
    ExponentSource source = ExponentSource::Analytic;
};

// Integrability thresholds for a given p.
//   tau_p = us0 (p-1)/(us0-p) for p < us0, infinity at p == us0, absent for p > us0.
//   t_p   = us0 (p-1)/(us0-1)  (gradient threshold; needs us0 > 1)
//   q_hat = lq0 + 1 - lq0/us0  (t_p < lq0 exactly when p < q_hat)
struct CriticalExponents {
    double p = 2.0;
    std::optional<double> tau_p;   // may hold +infinity; absent when p > us0
    std::optional<double> t_p;     // absent when us0 <= 1
    std::optional<double> q_hat;   // absent when us0 <= 1
};

// Local integrability bounds shared by all superharmonic functions with the given
// growth ceiling: below p == ceiling the function sits in L^tau for
// tau < ceiling (p-1)/(ceiling-p) (infinity at equality) and its gradient in L^t for
// t < ceiling (p-1)/(ceiling-1); above it everything is locally bounded.
struct SuperharmonicThresholds {
    bool locally_bounded = false;
    double tau_bound = 0.0;  // may be +infinity
    double t_bound = 0.0;
};

// From the declared at-zero class: every endpoint equals the class exponent; us0 meets
// the upper bound set when b >= 0 and the lower when b <= 0.
ExponentReport analytic_exponents(const GrowthFunction& g);

// Log-log least-squares slope over k points log-spaced in [r_lo, r_hi].
// Requires 0 < r_lo < r_hi <= anchor radius and k >= 8; spans under a factor 4 are
// rejected as degenerate.
ExponentReport empirical_exponents(const GrowthFunction& g, double r_lo, double r_hi, int k);

CriticalExponents critical_exponents(const ExponentReport& rep, double p);

SuperharmonicThresholds superharmonic_thresholds(double utheta, double p);

void validate(const ExponentReport& rep);  // ordering chain

}  // namespace potcap
