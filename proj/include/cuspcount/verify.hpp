#pragma once

// Grid verification: every structural identity, bound, dichotomy and
// counting formula, swept over all contexts (q, ell, m, d) within the given
// bounds and over every parameter of each context. The acceptance suite and
// the `verify` subcommand are both thin wrappers around these runners.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cuspcount/reps.hpp"

namespace cuspcount {

struct VerifyOptions {
    Int q_max = 5;
    unsigned n_max = 6;
    std::vector<Int> ells = {2, 3, 5, 7};
    bool parallel = true;
};

struct VerifyFailure {
    std::string suite;
    std::string instance;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::uint64_t instances = 0;
    std::vector<VerifyFailure> failures;
    std::map<std::string, std::uint64_t> counters;

    bool ok() const { return failures.empty(); }
};

struct VerifySummary {
    std::vector<SuiteResult> suites;

    bool ok() const {
        for (const auto& s : suites)
            if (!s.ok())
                return false;
        return true;
    }
    std::uint64_t total_instances() const {
        std::uint64_t n = 0;
        for (const auto& s : suites)
            n += s.instances;
        return n;
    }
};

// Elementary invariants of the integer and cyclic-group layers (fixed small
// exhaustive bounds, independent of the grid options).
SuiteResult verify_elementary(const VerifyOptions& opts);
SuiteResult verify_cyclic_model(const VerifyOptions& opts);

// Per-parameter structural relations: degree/stabilizer identities, gcd
// relations of (w, m', s), the regular-part/epsilon link, twist fixing.
SuiteResult verify_parameter_relations(const VerifyOptions& opts);

// Validity of modular parameters: the support-size criterion against the
// brute-force witness search, both directions.
SuiteResult verify_parameter_validity(const VerifyOptions& opts);

// t <= c with equality exactly in the rigid case; closed form against both
// enumerations.
SuiteResult verify_congruence_bound(const VerifyOptions& opts);

// Exact value of t w for w > 1, split on the ell-valuation of w; counts how
// often the coprimality-phrased split would pick the other branch.
SuiteResult verify_congruence_gap(const VerifyOptions& opts);

// T <= C with equality exactly in the rigid case.
SuiteResult verify_central_bound(const VerifyOptions& opts);

// Lift criterion == witness search for every a <= m'd'; order
// characterizations of witnesses (both directions), the valuation identity
// on witness orders, the min-valuation restatements, and the round trip
// witness -> reduction -> (class, a, w).
SuiteResult verify_lift_equivalence(const VerifyOptions& opts);

// Level-zero count against the regular class count, plus the exact
// rational identity sum(1/deg) = class count.
SuiteResult verify_count_level_zero(const VerifyOptions& opts);

// The regular-element correspondence: surjectivity, fibers = Frobenius
// classes, degree identities.
SuiteResult verify_correspondence(const VerifyOptions& opts);

// Count tables with the zero endoclass and synthetic nonzero records agree
// across every division pair of the same total degree.
SuiteResult verify_cross_division(const VerifyOptions& opts);

/// All suites, in a fixed order.
VerifySummary run_verify(const VerifyOptions& opts);

/// The synthetic endoclass records used by the cross-division sweep.
std::vector<EndoclassRecord> synthetic_endoclasses();

struct GridPoint {
    GroundData ground;
    InnerForm form;
};

/// (q, ell, m, d) lattice: prime powers q <= q_max, ell in ells coprime to q,
/// m d <= n_max. Deterministic order.
std::vector<GridPoint> make_grid(const VerifyOptions& opts);

} // namespace cuspcount
