#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cuspcount/errors.hpp"

namespace cuspcount {

// Every arithmetic quantity in the library is exact: unbounded integers for
// moduli, orders and counts, unbounded rationals for levels and weighted sums.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// base^exp for small nonnegative exponents.
Int pow_int(const Int& base, unsigned exp);

/// base^exp mod m, m >= 1.
Int pow_mod(const Int& base, const Int& exp, const Int& m);

/// Inverse of a modulo m, requires gcd(a, m) = 1. mod_inverse(_, 1) = 0.
Int mod_inverse(const Int& a, const Int& m);

/// Deterministic for n < 3.3e24 (fixed Miller-Rabin base set); desk-scale
/// inputs only, cryptographic sizes are out of scope.
bool is_prime(const Int& n);

/// Prime factorization of n >= 1, ascending primes. Trial division with a
/// Pollard-rho (Brent) fallback.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

/// Largest k with p^k | x. Requires x >= 1 and p prime.
unsigned valuation(const Int& x, const Int& p);

/// Moebius function, n >= 1.
int moebius(const Int& n);

/// Least k >= 1 with a^k = 1 (mod n). Requires gcd(a, n) = 1.
/// mult_order(_, 1) = 1: the trivial group arises when moduli collapse.
Int mult_order(const Int& a, const Int& n);

/// n with every factor of p removed: n / p^valuation(n, p).
Int coprime_part(const Int& n, const Int& p);

/// All positive divisors of n >= 1, ascending, duplicate-free.
std::vector<Int> divisors(const Int& n);

struct PrimePower {
    Int prime;
    unsigned exponent = 0;
};

/// (p, e) with q = p^e if q >= 2 is a prime power, absent otherwise.
std::optional<PrimePower> is_prime_power(const Int& q);

} // namespace cuspcount
