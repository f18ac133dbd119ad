#include "cuspcount/arith.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/integer.hpp>

namespace cuspcount {

namespace {

using boost::multiprecision::gcd;
using boost::multiprecision::powm;

Int require_positive(const Int& n, const char* who) {
    if (n < 1)
        throw InvalidArgument(std::string(who) + ": argument must be >= 1, got " + n.str());
    return n;
}

void require_prime(const Int& p, const char* who) {
    if (!is_prime(p))
        throw InvalidArgument(std::string(who) + ": " + p.str() + " is not prime");
}

} // namespace

Int pow_int(const Int& base, unsigned exp) {
    Int acc = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1u)
            acc *= b;
        exp >>= 1u;
        if (exp != 0)
            b *= b;
    }
    return acc;
}

Int pow_mod(const Int& base, const Int& exp, const Int& m) {
    require_positive(m, "pow_mod");
    if (m == 1)
        return 0;
    Int b = base % m;
    if (b < 0)
        b += m;
    return powm(b, exp, m);
}

Int mod_inverse(const Int& a, const Int& m) {
    require_positive(m, "mod_inverse");
    if (m == 1)
        return 0;
    // extended Euclid on (a mod m, m)
    Int r0 = m, r1 = a % m;
    if (r1 < 0)
        r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1)
        throw InvalidArgument("mod_inverse: " + a.str() + " is not invertible mod " + m.str());
    if (t0 < 0)
        t0 += m;
    return t0;
}

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    static const unsigned small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                            41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned p : small_primes) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    // Miller-Rabin over the first twelve primes: deterministic below 3.3e24,
    // which covers every modulus this library is meant for.
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powm(Int(a), d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n must be odd, composite, not a prime power of
    // anything already stripped by trial division.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int q = 1;
        unsigned lam = 1;
        while (d == 1) {
            x = y;
            for (unsigned i = 0; i < lam; ++i)
                y = (y * y + c) % n;
            for (unsigned i = 0; i < lam && d == 1; ++i) {
                y = (y * y + c) % n;
                q = (q * abs(x - y)) % n;
                if (q == 0) {
                    d = gcd(abs(x - y), n);
                    break;
                }
                if ((i & 63u) == 63u)
                    d = gcd(q, n);
            }
            if (d == 1)
                d = gcd(q, n);
            lam *= 2;
            if (lam > (1u << 24))
                break;
        }
        if (d != 1 && d != n)
            return d;
    }
}

void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.emplace_back(n, 1u);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    require_positive(n, "factorize");
    std::vector<std::pair<Int, unsigned>> factors;
    for (unsigned p : {2u, 3u, 5u}) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
    }
    // wheel mod 30
    static const unsigned steps[] = {4, 2, 4, 2, 4, 6, 2, 6};
    Int p = 7;
    unsigned idx = 0;
    while (p * p <= n && p < 65536) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
        p += steps[idx];
        idx = (idx + 1) % 8;
    }
    if (n > 1) {
        std::vector<std::pair<Int, unsigned>> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            unsigned e = 0;
            while (j < rest.size() && rest[j].first == rest[i].first) {
                e += rest[j].second;
                ++j;
            }
            factors.emplace_back(rest[i].first, e);
            i = j;
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

unsigned valuation(const Int& x, const Int& p) {
    if (x == 0)
        throw InvalidArgument("valuation: undefined at 0");
    require_positive(x, "valuation");
    require_prime(p, "valuation");
    unsigned k = 0;
    Int r = x;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    return k;
}

int moebius(const Int& n) {
    require_positive(n, "moebius");
    auto factors = factorize(n);
    for (const auto& [p, e] : factors)
        if (e >= 2)
            return 0;
    return factors.size() % 2 == 0 ? 1 : -1;
}

Int mult_order(const Int& a, const Int& n) {
    require_positive(n, "mult_order");
    if (n == 1)
        return 1;
    Int b = a % n;
    if (b < 0)
        b += n;
    if (gcd(b, n) != 1)
        throw InvalidArgument("mult_order: " + a.str() + " is not a unit mod " + n.str());
    // Euler phi from the factorization of n, then strip primes of phi.
    Int phi = 1;
    for (const auto& [p, e] : factorize(n))
        phi *= pow_int(p, e - 1) * (p - 1);
    Int order = phi;
    for (const auto& [p, e] : factorize(phi)) {
        (void)e;
        while (order % p == 0 && powm(b, order / p, n) == 1)
            order /= p;
    }
    return order;
}

Int coprime_part(const Int& n, const Int& p) {
    require_positive(n, "coprime_part");
    require_prime(p, "coprime_part");
    Int r = n;
    while (r % p == 0)
        r /= p;
    return r;
}

std::vector<Int> divisors(const Int& n) {
    require_positive(n, "divisors");
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::optional<PrimePower> is_prime_power(const Int& q) {
    if (q < 2)
        throw InvalidArgument("is_prime_power: argument must be >= 2, got " + q.str());
    auto factors = factorize(q);
    if (factors.size() != 1)
        return std::nullopt;
    return PrimePower{factors[0].first, factors[0].second};
}

} // namespace cuspcount
