#pragma once

#include <string>

namespace potcap {

// Relative tolerance for comparing derived exponents (tau vs tau_p, c vs -1, p vs a).
// Borderline cases are produced by floating-point formulas, so exact == is fragile.
inline constexpr double kExponentEps = 1e-9;

enum class Side { AtZero, AtInfinity };

// One-term power-log model: f(rho) ~ C * rho^a * |log rho|^b on the declared side.
// The class is declarative metadata; nothing in the library tries to infer it from samples
// (the empirical exponent fit is a separate, clearly-labelled estimator).
struct AsymptoticClass {
    double exponent_a = 0.0;      // a
    double log_exponent_b = 0.0;  // b
    double constant_C = 1.0;      // C > 0
    Side side = Side::AtZero;
};

// C * rho^a * |log rho|^b with the b == 0 case guarded so rho == 1 is safe.
double powlog(double rho, double a, double b, double C = 1.0);
double evaluate_class(const AsymptoticClass& cls, double rho);

// true if x == y up to kExponentEps relative tolerance
bool exponent_eq(double x, double y);

// Divergence of int_0 rho^c |log rho|^d d(rho): c < -1, or c == -1 and d >= -1.
bool integral_diverges_at_zero(double c, double d);

// Divergence of int^infty rho^c |log rho|^d d(rho): c > -1, or c == -1 and d >= -1.
bool integral_diverges_at_infinity(double c, double d);

// Integrand class of (rho / f(rho))^(1/(p-1)) when f ~ C rho^a |log rho|^b.
// Used by capacity tail tests and the parabolicity classifier.
AsymptoticClass pole_integrand_class(const AsymptoticClass& growth, double p);

std::string to_string(const AsymptoticClass& cls);

}  // namespace potcap
