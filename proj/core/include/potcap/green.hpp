#pragma once

#include <potcap/exponents.hpp>
#include <potcap/measures.hpp>

#include <functional>
#include <string>
#include <vector>

namespace potcap {

// Radial singular profile on the unit ball, normalized so that superlevel-set
// condensers have capacity b^(1-p):
//   u(rho) = int_rho^1 (omega w(s) s^(n-1))^(1/(1-p)) ds,   g(rho) = -u'(rho).
// Values are cached at dyadic anchors so repeated evaluations near 0 stay cheap.
class GreenProfile {
  public:
    GreenProfile(RadialMeasure m, double p);

    double value(double rho) const;     // u(rho), 0 < rho <= 1
    double gradient(double rho) const;  // (omega w(rho) rho^(n-1))^(1/(1-p))

    // radius of the superlevel set {u >= b}, 0 < b < sup u
    double superlevel_radius(double b) const;

    const RadialMeasure& measure() const { return m_; }
    double p() const { return p_; }

  private:
    RadialMeasure m_;
    double p_;
    double e_;  // 1/(1-p)
    mutable std::vector<double> anchors_;  // anchors_[k] = u(2^-k)

    double integrand(double rho) const;
    void ensure_anchor(int k) const;
};

double radial_green_value(const RadialMeasure& m, double p, double rho);
double radial_green_gradient(const RadialMeasure& m, double p, double rho);

// int_r^R (rho / f(rho))^(1/(p-1)) d rho; comparable to the profile's growth near
// the pole. r == R returns 0.
double growth_estimate(const GrowthFunction& g, double p, double r, double R,
                       double rel_tol = 1e-9);

enum class PointwiseRegime { BelowLq0, AtLq0, AboveLq0, BoundedCase };

struct RegimeResult {
    PointwiseRegime regime;
    std::string estimate;  // which two-sided formula applies
};

RegimeResult pointwise_regime(const ExponentReport& rep, double p);

// A * (inf_u + growth_estimate): annulus value estimate around a pole
double pole_profile_estimate(const GrowthFunction& g, double p, double r, double R,
                             double inf_u, double A);

enum class NormKind { FunctionNorm, GradientNorm };
enum class NormVerdict { Finite, Divergent, Inconclusive };

// Auto prefers the symbolic power-log route when the weight declares classes and
// falls back to shell sums; ForceNumeric always takes the shell route (used to
// cross-check the symbolic one).
enum class NormMode { Auto, ForceNumeric };

struct NormResult {
    double exponent = 0.0;
    NormKind kind = NormKind::FunctionNorm;
    NormVerdict verdict = NormVerdict::Inconclusive;
    double value = 0.0;  // NaN unless Finite
    std::string basis;
};

// omega * int_0^1 u(rho)^tau w(rho) rho^(n-1) d rho
NormResult lnorm_u(const RadialMeasure& m, double p, double tau, NormMode mode = NormMode::Auto);

// omega * int_0^1 (w(rho) rho^(n-1))^(1 - t/(p-1)) d rho
NormResult lnorm_gradient(const RadialMeasure& m, double p, double t, NormMode mode = NormMode::Auto);

// Dyadic-shell partial sums of a positive integrand on (0, 1], classified by tail
// behaviour: geometric decay and power decay k^(-gamma) with gamma > 1 extrapolate to
// a finite value; growing shells, sentinel-level sums, or gamma <= 1 report
// divergence. fitted_decay records the ratio or gamma used.
struct ShellAnalysis {
    NormVerdict verdict = NormVerdict::Inconclusive;
    double value = 0.0;
    double fitted_decay = 0.0;
    int shells = 0;
    std::string note;
};

ShellAnalysis shell_partial_sums(const std::function<double(double)>& integrand,
                                 int max_shells = 240);

std::string to_string(NormVerdict v);

}  // namespace potcap
