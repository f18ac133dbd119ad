#pragma once

#include <cstdint>

namespace cuspcount {

/// Enumeration budgets. Closed-form paths ignore these; anything that walks a
/// whole cyclic group is gated so that exact answers remain available past the
/// cap through the closed forms.
struct Caps {
    /// Largest group modulus any full enumeration may walk.
    std::uint64_t enumeration = 10'000'000;
    /// Gate for the redundant brute-force passes that double-check closed
    /// forms (full-ambient congruence recounts, parameter-validity searches).
    std::uint64_t cross_check = 1'000'000;
};

/// Process-wide defaults, set once at startup (CLI flag or environment) and
/// read-only afterwards.
Caps& global_caps();

} // namespace cuspcount
