#pragma once

// Lifting criteria for a modular cuspidal parameter y: whether a
// characteristic-zero parameter x with regular part y and reduction length a
// exists, both as a closed-form divisibility test and as a witness search
// over the ell-primary component.

#include <optional>

#include "cuspcount/reps.hpp"

namespace cuspcount {

struct LiftReport {
    unsigned a = 1;
    bool exists_closed = false;
    std::optional<bool> exists_brute; // present when the search ran
    std::optional<Element> witness;   // present iff exists_brute is true
    std::optional<unsigned> u;        // the exponent in a = epsilon * ell^u, when a decomposes
};

/// First x = y z (z of ell-power order, ascending exponent) with
/// degree_over(x, q_E) = a k deg(y) and degree_over(x, q_Dprime) = m', if any.
std::optional<Element> find_lift_witness(const ModCuspidal& sigma, unsigned a,
                                         std::uint64_t cap = global_caps().enumeration);

/// Closed-form criterion for an a-lift:
///   a = 1, supercuspidal: always true.
///   a = 1, otherwise: gcd(s, k) = 1 and epsilon = 1.
///   a > 1: a | s, a = epsilon * ell^u with u <= v(s), gcd(s/a, k) = 1.
/// Runs the witness search when the modulus is under the cap and throws
/// ConsistencyFailure if the two disagree.
LiftReport lift_criterion(const ModCuspidal& sigma, unsigned a);

struct LiftIdentityReport {
    bool applicable = false;        // false for supercuspidal parameters
    bool epsilon_divides_s = true;
    bool a1_restatement_agrees = true;   // epsilon = 1 and min(v(k), v(s)) = 0
    bool restatement_agrees_all_a = true; // min(v(k), v(s) - u) = 0 phrasing, a <= m'd'
};

/// The valuation-phrased restatements of the lift criteria, checked against
/// lift_criterion for every a up to m'd'. Vacuous for supercuspidal input.
LiftIdentityReport check_lift_identities(const ModCuspidal& sigma);

} // namespace cuspcount
