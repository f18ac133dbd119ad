#pragma once

// Congruence counting for a characteristic-zero cuspidal parameter x: the
// number t of classes sharing its reduction and degree, its ell-power budget
// c, the t <= c bound with its equality case, the exact gap identity for
// t w against c, and the central-character-pinned variants T <= C.

#include "cuspcount/reps.hpp"

namespace cuspcount {

enum class CountMode { direct, moebius, closed };

enum class GapCase { supercuspidal, w_coprime_to_ell, w_divisible_by_ell };

struct CongruenceReport {
    Int t;                // congruent class count
    Int c;                // ell-part of q^n_adic - 1
    unsigned w = 1;       // k * a
    Int big_t;            // class count with the central value pinned
    Int big_c;            // ell-part of (md/n)(q^n - 1)
    bool bound_holds = false;         // t <= c, equality iff w == 1
    GapCase gap_case = GapCase::supercuspidal;
    // Exact value of the gap: t w = c - 1 when v(w) = 0, and
    // t w = c - ell^v(Q^{w/ell} - 1) when v(w) >= 1. Holds unconditionally.
    bool gap_identity_holds = true;
    // The simplified second branch t w = c (ell-1)/ell. Equivalent to the
    // exact identity except on the 2-adic boundary: ell = 2, v(w) = 1 and
    // Q = 3 mod 4, where the ell-part of Q^w - 1 jumps by more than one step.
    bool gap_simple_form_holds = true;
    bool split_by_t_coprimality_agrees = true; // "t coprime to ell" picks the same branch
    bool central_bound_holds = false; // T <= C, equality iff w == 1
    bool brute_force_skipped = false;
};

/// t by enumeration: classes of x' with the same regular part and the same
/// degree as x. Runs the reduced search over the ell-primary component and,
/// under the cross-check cap, a full-ambient recount that must agree.
Int class_count_brute(const AdicCuspidal& rho, std::uint64_t cap = global_caps().enumeration);

/// Number of ell-power-order elements of degree exactly n over the field with
/// Q elements. All modes agree where defined; `closed` additionally requires
/// n > 1 and ord(Q mod ell) equal to the ell-free part of n.
Int power_order_degree_count(const Int& Q, const Int& ell, unsigned n,
                             CountMode mode = CountMode::moebius,
                             std::uint64_t cap = global_caps().enumeration);

/// t in closed form: the degree-w count over the field generated by the
/// regular part of x, divided by w.
Int class_count_closed(const AdicCuspidal& rho);

/// c: the ell-part of q^n_adic - 1.
Int ell_power_budget(const AdicCuspidal& rho);

/// t (both routes when under cap), c, w and the bound check.
CongruenceReport check_congruence_bound(const AdicCuspidal& rho);

/// The exact value of t w for non-supercuspidal reductions (w > 1), split on
/// the ell-valuation of w; also evaluates the coprimality-phrased split and
/// records whether the two select the same branch. Throws InvalidArgument
/// when w == 1.
CongruenceReport check_congruence_gap(const AdicCuspidal& rho);

struct CentralCounts {
    Int big_t;
    Int big_c;
    bool bound_holds = false;
};

/// T = t * ell-part of md/n, C = ell-part of (md/n)(q^n - 1).
CentralCounts central_counts(const AdicCuspidal& rho);

/// Everything above in one report.
CongruenceReport congruence_report(const AdicCuspidal& rho);

} // namespace cuspcount
