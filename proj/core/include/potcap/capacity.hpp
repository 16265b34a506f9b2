#pragma once

#include <potcap/measures.hpp>

#include <stdexcept>

namespace potcap {

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

enum class CapacityMethod {
    IntegralEstimate,   // annulus integral of (rho/f)^(1/(p-1)), raised to 1-p
    ExactRadial,        // closed condenser formula from the radial weight
    DyadicUpper,        // chained dyadic-ring upper bound
    Variational,        // damped Newton on the discretized energy
    InterpolationLower  // Holder interpolation between two exponents
};

struct CapacityQuery {
    double p = 2.0;  // in (1, infinity)
    double r = 0.0;  // inner radius
    double R = 0.0;  // outer radius, r < R
    void validate() const;
};

struct CapacityResult {
    double value = 0.0;
    CapacityMethod method = CapacityMethod::IntegralEstimate;
    double abs_error_estimate = 0.0;
    // integral and dyadic routes assume 2r <= R; violating queries still evaluate
    // but the result is flagged rather than trusted
    bool hypothesis_met = true;
};

// (int_r^R (rho/f(rho))^(1/(p-1)) d rho)^(1-p)
CapacityResult integral_estimate(const GrowthFunction& g, const CapacityQuery& q,
                                 double rel_tol = 1e-9);

// (int_r^R (omega w(rho) rho^(n-1))^(1/(1-p)) d rho)^(1-p); valid for all 0 < r < R
CapacityResult exact_radial(const RadialMeasure& m, const CapacityQuery& q,
                            double rel_tol = 1e-10);

// (sum_{k=1..k0} (r_k^p / f(r_k))^(1/(p-1)))^(1-p), r_k = 2^k r, k0 = floor(log2(R/r))
CapacityResult dyadic_upper(const GrowthFunction& g, const CapacityQuery& q);

// Minimizes the discrete p-energy over radial profiles with u(r)=1, u(R)=0 on N
// log-spaced intervals. abs_error_estimate is the change from the half-resolution
// solve. Throws SolverError if Newton (with gradient-descent fallback) stalls.
CapacityResult variational_radial(const RadialMeasure& m, const CapacityQuery& q, int N = 1024);

// Lower bound for the t-capacity from the p-capacity and a q-integral,
// 1 < q < t < p, alpha = (p-t)/(p-q):
//   cap_t >= cap_p^(1-alpha) * (int_r^R (rho/f)^(1/(q-1)))^(alpha(1-q))
CapacityResult interpolation_lower(const GrowthFunction& g, double p, double q, double t,
                                   double r, double R, double rel_tol = 1e-9);

std::string to_string(CapacityMethod m);

}  // namespace potcap
