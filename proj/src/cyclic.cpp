#include "cuspcount/cyclic.hpp"

#include <algorithm>

#include "cuspcount/scan.hpp"

namespace cuspcount {

using boost::multiprecision::gcd;

Caps& global_caps() {
    static Caps caps;
    return caps;
}

std::vector<unsigned> small_divisors(unsigned n) {
    std::vector<unsigned> divs;
    for (unsigned d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d)
                divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

AmbientField AmbientField::make(const Int& base_card, unsigned degree) {
    if (degree == 0)
        throw InvalidArgument("AmbientField: degree must be >= 1");
    if (!is_prime_power(base_card))
        throw InvalidArgument("AmbientField: base cardinality " + base_card.str() +
                              " is not a prime power");
    return AmbientField{base_card, degree, pow_int(base_card, degree) - 1};
}

Element Element::make(AmbientField ambient, const Int& exponent) {
    Int e = exponent % ambient.modulus;
    if (e < 0)
        e += ambient.modulus;
    if (ambient.modulus == 1)
        e = 0;
    return Element{std::move(ambient), std::move(e)};
}

Int order(const Element& x) {
    return x.ambient.modulus / gcd(x.exponent, x.ambient.modulus);
}

unsigned subfield_exponent(const AmbientField& ambient, const Int& sub_card) {
    Int power = ambient.base_card;
    for (unsigned k = 1; k <= ambient.degree; ++k) {
        if (power == sub_card && ambient.degree % k == 0)
            return k;
        power *= ambient.base_card;
    }
    throw InvalidArgument("invalid subfield: " + sub_card.str() + " is not a power of " +
                          ambient.base_card.str() + " with exponent dividing " +
                          std::to_string(ambient.degree));
}

unsigned degree_over(const Element& x, const Int& sub_card) {
    const unsigned k = subfield_exponent(x.ambient, sub_card);
    const Int ord = order(x);
    const Int one = ord == 1 ? Int(0) : Int(1);
    // The degree divides the extension degree N/k; walk its divisors.
    for (unsigned t : small_divisors(x.ambient.degree / k))
        if (pow_mod(sub_card, t, ord) == one)
            return t;
    throw ConsistencyFailure("degree_over: no degree found, broken ambient");
}

Element frobenius(const Element& x, const Int& sub_card) {
    subfield_exponent(x.ambient, sub_card);
    return Element::make(x.ambient, x.exponent * sub_card);
}

Element regular_part(const Element& x, const Int& ell) {
    if (!is_prime(ell))
        throw InvalidArgument("regular_part: " + ell.str() + " is not prime");
    if (x.ambient.base_card % ell == 0)
        throw InvalidArgument("regular_part: " + ell.str() + " divides the base cardinality");
    const Int& m = x.ambient.modulus;
    const unsigned alpha = valuation(m, ell);
    if (alpha == 0)
        return x;
    const Int ell_alpha = pow_int(ell, alpha);
    const Int m_prime = m / ell_alpha;
    if (m_prime == 1)
        return Element::make(x.ambient, 0);
    // e' = e mod m_prime, e' = 0 mod ell^alpha
    const Int crt = (ell_alpha * mod_inverse(ell_alpha % m_prime, m_prime)) % m;
    return Element::make(x.ambient, (x.exponent % m_prime) * crt);
}

unsigned orbit_size(const Element& x, const Int& sub_card) {
    return degree_over(x, sub_card);
}

Element orbit_representative(const Element& x, const Int& sub_card) {
    subfield_exponent(x.ambient, sub_card);
    const Int frob = sub_card % x.ambient.modulus;
    Int best = x.exponent;
    Int cur = (x.exponent * frob) % x.ambient.modulus;
    while (cur != x.exponent) {
        best = std::min(best, cur);
        cur = (cur * frob) % x.ambient.modulus;
    }
    return Element::make(x.ambient, best);
}

Element embed(const Element& x, unsigned larger_degree) {
    if (larger_degree == 0 || larger_degree % x.ambient.degree != 0)
        throw InvalidArgument("embed: " + std::to_string(x.ambient.degree) +
                              " does not divide " + std::to_string(larger_degree));
    const AmbientField target = AmbientField::make(x.ambient.base_card, larger_degree);
    return Element::make(target, x.exponent * (target.modulus / x.ambient.modulus));
}

Element transport(const Element& x, unsigned new_degree) {
    const unsigned d = degree_over(x, x.ambient.base_card);
    if (new_degree == 0 || new_degree % d != 0)
        throw InvalidArgument("transport: element of degree " + std::to_string(d) +
                              " does not fit in degree " + std::to_string(new_degree));
    const Int small_modulus = pow_int(x.ambient.base_card, d) - 1;
    const Int stride = x.ambient.modulus / small_modulus;
    if (x.exponent % stride != 0)
        throw ConsistencyFailure("transport: exponent not in the subfield its degree names");
    const Element compressed{AmbientField::make(x.ambient.base_card, d), x.exponent / stride};
    return embed(compressed, new_degree);
}

std::vector<Element> orbit_reps_where(const AmbientField& ambient, const Int& sub_card,
                                      const std::function<bool(const Element&)>& pred,
                                      std::uint64_t cap) {
    subfield_exponent(ambient, sub_card);
    if (ambient.modulus > cap)
        throw CapExceeded("orbit_reps_where: enumeration cap exceeded", ambient.modulus.str());
    const auto modulus = ambient.modulus.convert_to<std::uint64_t>();
    const auto frob = (sub_card % ambient.modulus).convert_to<std::uint64_t>();
    auto mins = scan::orbit_min_scan(
        modulus, frob, [](std::uint64_t, std::uint64_t) { return true; },
        [&](std::uint64_t e, std::uint64_t, unsigned) {
            return pred(Element::make(ambient, Int(e)));
        });
    std::vector<Element> reps;
    reps.reserve(mins.size());
    for (std::uint64_t e : mins)
        reps.push_back(Element::make(ambient, Int(e)));
    return reps;
}

} // namespace cuspcount
