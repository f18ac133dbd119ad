#pragma once

// Flat scans over a cyclic group Z/M with a fixed multiplier action
// e -> frob*e mod M (the Frobenius on exponents). Every enumeration in the
// library bottoms out here, so the loops are kept on machine words: callers
// cap M well below 2^63 and convert back to exact integers afterwards.
//
// Each kernel exists twice: a serial reference and an OpenMP version. They
// must return byte-identical results; the tests compare them and the bench
// target times them against each other.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cuspcount::scan {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

struct OrbitInfo {
    std::uint64_t min;
    unsigned length;
};

/// Minimum and length of the <frob>-orbit of e in Z/modulus. frob must be a
/// unit mod modulus; orbits are then cycles and this terminates.
inline OrbitInfo orbit_of(std::uint64_t e, std::uint64_t frob, std::uint64_t modulus) {
    OrbitInfo info{e, 1};
    std::uint64_t cur = mul_mod(frob, e, modulus);
    while (cur != e) {
        info.min = std::min(info.min, cur);
        cur = mul_mod(frob, cur, modulus);
        ++info.length;
    }
    return info;
}

namespace detail {

inline std::vector<std::uint64_t> finalize(std::vector<std::uint64_t> mins) {
    std::sort(mins.begin(), mins.end());
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    return mins;
}

template <class Filter, class Accept>
void scan_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t modulus, std::uint64_t frob,
                Filter& filter, Accept& accept, std::vector<std::uint64_t>& mins) {
    for (std::uint64_t e = lo; e < hi; ++e) {
        const std::uint64_t ord = modulus / std::gcd(e, modulus);
        if (!filter(e, ord))
            continue;
        const OrbitInfo orbit = orbit_of(e, frob, modulus);
        if (accept(e, ord, orbit.length))
            mins.push_back(orbit.min);
    }
}

} // namespace detail

/// Sorted, distinct minima of the <frob>-orbits of all accepted elements.
/// filter(e, ord) is a cheap pre-filter; accept(e, ord, deg) sees the orbit
/// length as deg. The accepted set need not be orbit-stable: an orbit is
/// reported as soon as one of its members is accepted.
template <class Filter, class Accept>
std::vector<std::uint64_t> orbit_min_scan_serial(std::uint64_t modulus, std::uint64_t frob,
                                                 Filter filter, Accept accept) {
    std::vector<std::uint64_t> mins;
    detail::scan_range(0, modulus, modulus, frob % modulus, filter, accept, mins);
    return detail::finalize(std::move(mins));
}

/// OpenMP version of orbit_min_scan_serial. Callbacks are invoked
/// concurrently and must be pure. Output is identical to the serial kernel.
template <class Filter, class Accept>
std::vector<std::uint64_t> orbit_min_scan_parallel(std::uint64_t modulus, std::uint64_t frob,
                                                   Filter filter, Accept accept) {
    std::vector<std::uint64_t> mins;
    frob %= modulus;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t e = 0; e < static_cast<std::int64_t>(modulus); ++e) {
            const std::uint64_t ue = static_cast<std::uint64_t>(e);
            const std::uint64_t ord = modulus / std::gcd(ue, modulus);
            if (!filter(ue, ord))
                continue;
            const OrbitInfo orbit = orbit_of(ue, frob, modulus);
            if (accept(ue, ord, orbit.length))
                local.push_back(orbit.min);
        }
#pragma omp critical(cuspcount_scan_merge)
        mins.insert(mins.end(), local.begin(), local.end());
    }
    return detail::finalize(std::move(mins));
}

/// Dispatch: parallel kernel for large groups, serial below the threshold
/// where thread start-up dominates.
template <class Filter, class Accept>
std::vector<std::uint64_t> orbit_min_scan(std::uint64_t modulus, std::uint64_t frob, Filter filter,
                                          Accept accept) {
    constexpr std::uint64_t kParallelThreshold = 1u << 16;
    if (modulus >= kParallelThreshold)
        return orbit_min_scan_parallel(modulus, frob, std::move(filter), std::move(accept));
    return orbit_min_scan_serial(modulus, frob, std::move(filter), std::move(accept));
}

} // namespace cuspcount::scan
