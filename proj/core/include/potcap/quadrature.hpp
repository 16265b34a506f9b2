#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace potcap {

struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integration of f over [a, b] (GSL QAGS behind the scenes).
// abs_err, when non-null, receives the integrator's error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double* abs_err = nullptr);

// Same integral computed in t = log(rho). Requires 0 < a < b. This is the
// workhorse for (rho/f)^(1/(p-1))-type integrands: in log coordinates they are
// smooth exponentials and the adaptive panels are effectively log-spaced.
double integrate_log(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double* abs_err = nullptr);

}  // namespace potcap
