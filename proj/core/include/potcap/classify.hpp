#pragma once

#include <potcap/green.hpp>
#include <potcap/measures.hpp>

#include <string>
#include <vector>

namespace potcap {

// Member/NonMember answer the posed question outright; the Borderline states mark
// decisions taken exactly at the critical exponent (via the shell sum or bounded
// test). Inconclusive means the declared hypotheses or asymptotics do not cover the
// case, never that the computation failed.
enum class VerdictState { Member, NonMember, BorderlineIn, BorderlineOut, Inconclusive };

struct Verdict {
    VerdictState state = VerdictState::Inconclusive;
    std::string basis;  // names the decision branch that produced the state
    std::vector<std::string> hypotheses_used;
};

// Does the point at the center carry zero p-capacity? Member = zero capacity (the
// pole integral diverges; unconditional). The positive-capacity converse consumes a
// below-p Poincare hypothesis at small radii.
Verdict singleton_zero(const GrowthFunction& g, double p, const AssumptionProfile& hyp = {});

// Is the space p-parabolic? Member = parabolic when the tail integral diverges
// (unconditional); the hyperbolic converse consumes large-radii hypotheses.
Verdict is_parabolic(const GrowthFunction& g, double p, const AssumptionProfile& hyp = {});

// Is the singular profile bounded at the pole? Negation of the zero-capacity test.
Verdict green_bounded(const GrowthFunction& g, double p);

// Is the profile in L^tau of the unit ball? tau == tau_p resolves through the
// critical shell sum (BorderlineIn/Out); tau = +infinity poses the boundedness
// question at p == us0.
Verdict green_in_Ltau(const GrowthFunction& g, double p, double tau);

// Is the gradient in L^t? Supercritical exponents need a t-Poincare hypothesis; the
// t == t_p borderline resolves through declared hypotheses or, for radial models,
// the exact gradient norm.
Verdict gradient_in_Lt(const GrowthFunction& g, double p, double t,
                       const AssumptionProfile& hyp = {});

// Membership at the critical exponent improves with p: once the profile lies in
// L^{tau_p1}, it lies in L^{tau_p2} for every p1 < p2 below us0. Returns the truth
// of that implication for this model (expected: always true).
bool tau_monotonicity_check(const GrowthFunction& g, double p1, double p2);

std::string to_string(VerdictState s);

}  // namespace potcap
