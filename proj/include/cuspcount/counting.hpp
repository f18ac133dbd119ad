#pragma once

// Class counting with a fixed invariant w: the count of regular classes with
// prescribed order/degree behaviour, the set of modular parameters admitting
// a lift of invariant w, the correspondence sending a regular element to the
// cuspidal parameter it supports over D, and the resulting count table whose
// rows agree across every division algebra of the same total degree.

#include <optional>
#include <utility>
#include <vector>

#include "cuspcount/lifting.hpp"
#include "cuspcount/reps.hpp"

namespace cuspcount {

/// Number of Frobenius classes (over the q-element field) of y in the
/// extension of degree n/w with: order coprime to ell, and ord(q^deg(y))
/// mod ell equal to the ell-free part of w. Requires w | n.
Int regular_class_count(const GroundData& ground, unsigned n, unsigned w,
                        std::uint64_t cap = global_caps().enumeration);

/// All modular cuspidal parameters, over every GL_u(D) with u | m at level
/// zero, whose class admits a characteristic-zero lift with invariant w:
/// k | w and the (w/k)-lift criterion holds. Ordered by (u, exponent).
std::vector<ModCuspidal> enumerate_liftable(const GroundData& ground, unsigned m, unsigned d,
                                            unsigned w,
                                            std::uint64_t cap = global_caps().enumeration);

/// The cuspidal parameter over GL_{k r}(D) supported by the regular element
/// y (given in the ambient of degree n/w over q, n = m d): r = deg(y)/(deg,d),
/// s_y = d/(deg,d), k = w/(w, s_y). Verifies deg = k r divides m and the
/// derived identities; throws InvalidArgument when y fails the membership
/// conditions.
ModCuspidal cuspidal_from_regular(const GroundData& ground, unsigned m, unsigned d, unsigned w,
                                  const Element& y);

struct CorrespondenceReport {
    bool surjective = false;      // every liftable parameter is hit
    bool fibers_are_orbits = false; // fibers = classes under e -> q^d e
    bool identities_hold = false; // degree and support-size identities per y
    Int class_count;              // orbits in the regular set
    Int liftable_count;           // size of the target set
    bool ok() const { return surjective && fibers_are_orbits && identities_hold; }
};

CorrespondenceReport check_correspondence(const GroundData& ground, unsigned m, unsigned d,
                                          unsigned w,
                                          std::uint64_t cap = global_caps().enumeration);

/// Level-zero count: sum of s(sigma)/d over enumerate_liftable, asserted
/// integral and equal to regular_class_count(ground, m d, w).
Int count_level_zero(const GroundData& ground, unsigned m, unsigned d, unsigned w,
                     std::uint64_t cap = global_caps().enumeration);

/// Count for one endoclass: 0 when deg does not divide n/w, otherwise the
/// regular class count over (q^res_deg, n/deg, w). Under the cross-check cap
/// the value is re-derived through the reduced context (q^res_deg, m', d')
/// and must agree.
Int count_for_endoclass(const GroundData& ground, unsigned m, unsigned d,
                        const EndoclassRecord& endo, unsigned w,
                        std::uint64_t cap = global_caps().enumeration);

struct CountQuery {
    GroundData ground;
    unsigned n = 1;
    unsigned w = 1;
    std::vector<std::pair<unsigned, unsigned>> pairs; // (m, d) with m d = n
    std::vector<EndoclassRecord> endoclasses;
    std::optional<Rat> level_bound; // absent: no level filter
};

struct CountRow {
    unsigned m = 1;
    unsigned d = 1;
    std::vector<Int> per_endoclass; // contribution per listed endoclass (0 when filtered)
    Int total;
};

struct CountTable {
    std::vector<CountRow> rows; // ordered by m ascending
    bool all_equal = true;
};

/// The full table: one row per (m, d), one column per endoclass with the
/// level and degree filters applied. Throws ConsistencyFailure when two rows
/// have different totals.
CountTable count_table(const CountQuery& query, std::uint64_t cap = global_caps().enumeration);

} // namespace cuspcount
