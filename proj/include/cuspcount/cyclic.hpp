#pragma once

// Multiplicative group of a finite extension, modeled as Z/(Q^N - 1) on
// exponents relative to an unnamed generator. Orders, degrees, Frobenius
// orbits and regular parts all factor through this cyclic structure, so no
// polynomial arithmetic ever happens.

#include <cstdint>
#include <functional>
#include <vector>

#include "cuspcount/arith.hpp"
#include "cuspcount/caps.hpp"

namespace cuspcount {

struct AmbientField {
    Int base_card;   // Q, a prime power
    unsigned degree; // N >= 1
    Int modulus;     // Q^N - 1

    static AmbientField make(const Int& base_card, unsigned degree);

    bool operator==(const AmbientField&) const = default;
};

/// A residue exponent e standing for g^e under a fixed generator g of the
/// ambient group. Only order, degree and orbit data are ever consumed, so the
/// generator choice is immaterial.
struct Element {
    AmbientField ambient;
    Int exponent; // in [0, modulus)

    static Element make(AmbientField ambient, const Int& exponent);

    bool is_identity() const { return exponent == 0; }
    bool operator==(const Element&) const = default;
};

/// Multiplicative order: modulus / gcd(exponent, modulus).
Int order(const Element& x);

/// Exponent k | ambient.degree with sub_card = Q^k, or throws.
unsigned subfield_exponent(const AmbientField& ambient, const Int& sub_card);

/// Degree of x over the subfield with sub_card elements: the least t >= 1
/// with sub_card^t = 1 mod order(x). Equals the orbit size of x under
/// e -> sub_card * e.
unsigned degree_over(const Element& x, const Int& sub_card);

/// The Frobenius of the subfield with sub_card elements: e -> sub_card * e.
Element frobenius(const Element& x, const Int& sub_card);

/// The unique y with x/y of ell-power order and order(y) coprime to ell.
/// CRT on exponents: the result is = x mod M' and = identity on the
/// ell-primary component, where modulus = ell^a * M'. Requires ell prime,
/// ell not dividing the base cardinality.
Element regular_part(const Element& x, const Int& ell);

unsigned orbit_size(const Element& x, const Int& sub_card);

/// Minimal exponent in the Frobenius orbit of x over the given subfield; the
/// canonical representative used everywhere for class identity and output
/// determinism.
Element orbit_representative(const Element& x, const Int& sub_card);

/// Reinterpret x in the extension of degree larger_degree over the same base;
/// requires ambient.degree | larger_degree. Preserves order and every
/// degree_over a common subfield.
Element embed(const Element& x, unsigned larger_degree);

/// Move x into the ambient of degree new_degree over the same base, requiring
/// only degree_over(x, base) | new_degree: compresses to the field generated
/// by x, then embeds.
Element transport(const Element& x, unsigned new_degree);

/// One canonical representative per Frobenius orbit (over sub_card) among the
/// elements satisfying pred, ascending by exponent. pred must be pure; the
/// scan may run on several threads. Throws CapExceeded when the modulus is
/// larger than cap.
std::vector<Element> orbit_reps_where(const AmbientField& ambient, const Int& sub_card,
                                      const std::function<bool(const Element&)>& pred,
                                      std::uint64_t cap = global_caps().enumeration);

/// Small-integer divisor list, ascending (degrees, not moduli).
std::vector<unsigned> small_divisors(unsigned n);

} // namespace cuspcount
