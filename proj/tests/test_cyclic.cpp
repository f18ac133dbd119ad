#include "doctest.h"

#include <numeric>

#include "cuspcount/cyclic.hpp"

using namespace cuspcount;

namespace {

Element elem(unsigned q, unsigned n, const Int& e) {
    return Element::make(AmbientField::make(Int(q), n), e);
}

} // namespace

TEST_CASE("order") {
    CHECK(order(elem(2, 6, 7)) == 9);
    CHECK(order(elem(2, 6, 0)) == 1);
    CHECK(order(elem(2, 2, 1)) == 3);
    CHECK(order(elem(2, 1, 0)) == 1); // trivial group
}

TEST_CASE("degree_over") {
    CHECK(degree_over(elem(2, 6, 7), Int(2)) == 6);
    CHECK(degree_over(elem(2, 2, 1), Int(4)) == 1);
    CHECK(degree_over(elem(2, 6, 0), Int(4)) == 1);
    CHECK_THROWS_AS(degree_over(elem(2, 6, 7), Int(5)), InvalidArgument);
    CHECK_THROWS_AS(degree_over(elem(2, 6, 7), Int(16)), InvalidArgument); // 4 does not divide 6
}

TEST_CASE("frobenius") {
    CHECK(frobenius(elem(2, 2, 1), Int(2)).exponent == 2);
    CHECK(frobenius(elem(2, 6, 0), Int(2)).exponent == 0);
    CHECK(frobenius(elem(2, 6, 7), Int(2)).exponent == 14);
}

TEST_CASE("regular_part") {
    // order 9 is already an ell-power for ell = 3
    CHECK(regular_part(elem(2, 6, 7), Int(3)).exponent == 0);
    // CRT: e = 0 mod 9, e = 1 mod 7
    CHECK(regular_part(elem(2, 6, 1), Int(3)).exponent == 36);
    const Element y = regular_part(elem(2, 6, 5), Int(3));
    CHECK(regular_part(y, Int(3)) == y);
    CHECK_THROWS_AS(regular_part(elem(2, 6, 1), Int(2)), InvalidArgument);
    CHECK_THROWS_AS(regular_part(elem(2, 6, 1), Int(6)), InvalidArgument);
}

TEST_CASE("orbits") {
    CHECK(orbit_size(elem(2, 6, 7), Int(2)) == 6);
    CHECK(orbit_size(elem(2, 6, 0), Int(2)) == 1);
    CHECK(orbit_representative(elem(2, 6, 0), Int(2)).exponent == 0);
    CHECK(orbit_representative(elem(2, 2, 2), Int(2)).exponent == 1);
    CHECK(orbit_representative(elem(2, 6, 56), Int(2)).exponent == 7);
}

TEST_CASE("orbit_reps_where") {
    const AmbientField f4 = AmbientField::make(Int(2), 2);
    const auto power_of_3 = [](const Element& x) {
        return coprime_part(order(x), Int(3)) == 1;
    };
    const auto reps = orbit_reps_where(f4, Int(2), power_of_3);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].exponent == 0);
    CHECK(reps[1].exponent == 1);

    CHECK(orbit_reps_where(f4, Int(2), [](const Element&) { return false; }).empty());

    const AmbientField f64 = AmbientField::make(Int(2), 6);
    const auto full_degree_trivial_regular = [](const Element& x) {
        return degree_over(x, Int(2)) == 6 && regular_part(x, Int(3)).is_identity();
    };
    CHECK(orbit_reps_where(f64, Int(2), full_degree_trivial_regular).size() == 1);

    CHECK_THROWS_AS(orbit_reps_where(f64, Int(2), power_of_3, 10), CapExceeded);
}

TEST_CASE("embed") {
    CHECK(embed(elem(2, 1, 0), 6).exponent == 0);
    const Element big = embed(elem(2, 2, 1), 6);
    CHECK(big.exponent == 21);
    CHECK(order(big) == 3);
    CHECK(degree_over(big, Int(2)) == 2);
    CHECK_THROWS_AS(embed(elem(2, 2, 1), 3), InvalidArgument);
}

TEST_CASE("transport moves through the minimal subfield") {
    const Element x = elem(2, 6, 21); // order 3, degree 2 over the base
    const Element moved = transport(x, 4);
    CHECK(moved.ambient.degree == 4);
    CHECK(moved.exponent == 5);
    CHECK(order(moved) == 3);
    CHECK(degree_over(moved, Int(2)) == 2);
    CHECK_THROWS_AS(transport(x, 3), InvalidArgument);
}

TEST_CASE("cyclic properties on a small exhaustive range") {
    for (unsigned q : {2u, 3u, 4u}) {
        for (unsigned n : {1u, 2u, 3u, 4u}) {
            const AmbientField ambient = AmbientField::make(Int(q), n);
            for (Int e = 0; e < ambient.modulus; ++e) {
                const Element x = Element::make(ambient, e);
                for (unsigned k : small_divisors(n)) {
                    const Int sub = pow_int(Int(q), k);
                    // degree equals orbit size, and obeys the subfield formula
                    unsigned walked = 1;
                    Element cur = frobenius(x, sub);
                    while (!(cur == x)) {
                        cur = frobenius(cur, sub);
                        ++walked;
                    }
                    CHECK(degree_over(x, sub) == walked);
                    const unsigned base_deg = degree_over(x, Int(q));
                    CHECK(degree_over(x, sub) == base_deg / std::gcd(base_deg, k));
                }
                for (unsigned ell : {3u, 5u, 7u}) {
                    if (q % ell == 0)
                        continue;
                    const Element y = regular_part(x, Int(ell));
                    CHECK(order(y) == coprime_part(order(x), Int(ell)));
                    CHECK(regular_part(frobenius(x, Int(q)), Int(ell)) ==
                          frobenius(y, Int(q)));
                    CHECK(coprime_part(order(x) / order(y), Int(ell)) == 1);
                }
            }
        }
    }
}
