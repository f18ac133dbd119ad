#include "doctest.h"

#include "cuspcount/reps.hpp"

using namespace cuspcount;

namespace {

// The four desk scenarios used across the congruence and lifting suites.
AdicCuspidal scenario_s1() {
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{2, 1},
                                  EndoclassRecord::zero());
    return make_adic(ctx, Element::make(ctx.ambient, Int(1))); // order 3
}

AdicCuspidal scenario_s2() {
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{1, 2},
                                  EndoclassRecord::zero());
    return make_adic(ctx, Element::make(ctx.ambient, Int(1)));
}

AdicCuspidal scenario_s3() {
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{6, 1},
                                  EndoclassRecord::zero());
    return make_adic(ctx, Element::make(ctx.ambient, Int(7))); // order 9 in Z/63
}

AdicCuspidal scenario_s4() {
    const auto ctx = make_context(make_ground(Int(2), Int(5)), InnerForm{2, 2},
                                  EndoclassRecord::zero());
    return make_adic(ctx, Element::make(ctx.ambient, Int(3))); // order 5 in Z/15
}

} // namespace

TEST_CASE("ground validation") {
    CHECK_THROWS_AS(make_ground(Int(6), Int(5)), InvalidArgument);  // not a prime power
    CHECK_THROWS_AS(make_ground(Int(4), Int(2)), InvalidArgument);  // ell divides q
    CHECK_THROWS_AS(make_ground(Int(4), Int(6)), InvalidArgument);  // ell not prime
    const GroundData g = make_ground(Int(8), Int(3));
    CHECK(g.p == 2);
    CHECK(g.q_exp == 3);
}

TEST_CASE("make_context derives the frame") {
    const GroundData g23 = make_ground(Int(2), Int(3));

    auto ctx = make_context(g23, InnerForm{2, 1}, EndoclassRecord::zero());
    CHECK(ctx.d_prime == 1);
    CHECK(ctx.m_prime == 2);
    CHECK(ctx.q_E == 2);
    CHECK(ctx.q_Dprime == 2);
    CHECK(ctx.ambient.modulus == 3);

    ctx = make_context(g23, InnerForm{1, 2}, EndoclassRecord::zero());
    CHECK(ctx.d_prime == 2);
    CHECK(ctx.m_prime == 1);
    CHECK(ctx.q_Dprime == 4);

    ctx = make_context(g23, InnerForm{4, 1}, EndoclassRecord{2, 1, Rat(1, 2)});
    CHECK(ctx.d_prime == 1);
    CHECK(ctx.m_prime == 2);
    CHECK(ctx.q_E == 2);
    CHECK(ctx.f_rho() == 2);

    CHECK_THROWS_AS(make_context(g23, InnerForm{2, 1}, EndoclassRecord{3, 1, Rat(1)}),
                    InvalidArgument); // 3 does not divide 2
    CHECK_THROWS_AS(make_context(g23, InnerForm{2, 1}, EndoclassRecord{2, 4, Rat(1)}),
                    InvalidArgument); // res_deg does not divide deg
}

TEST_CASE("adic invariants of the desk scenarios") {
    const auto s1 = adic_invariants(scenario_s1());
    CHECK(s1.s_adic == 1);
    CHECK(s1.f_rho == 2);
    CHECK(s1.n_adic == 2);
    CHECK(s1.deg_x == 2);

    const auto s2 = adic_invariants(scenario_s2());
    CHECK(s2.s_adic == 1);
    CHECK(s2.f_rho == 2);
    CHECK(s2.n_adic == 2);
    CHECK(s2.deg_x == 2);

    const auto s4 = adic_invariants(scenario_s4());
    CHECK(s4.s_adic == 1);
    CHECK(s4.f_rho == 4);
    CHECK(s4.n_adic == 4);
    CHECK(s4.deg_x == 4);
}

TEST_CASE("membership is checked") {
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{2, 1},
                                  EndoclassRecord::zero());
    // identity has degree 1 != m' = 2
    CHECK_THROWS_AS(make_adic(ctx, Element::make(ctx.ambient, Int(0))), InvalidArgument);
}

TEST_CASE("reduction of the desk scenarios") {
    const Reduction r1 = reduce(scenario_s1());
    CHECK(r1.sigma.inv.k == 2);
    CHECK(r1.a == 1);
    CHECK(r1.w == 2);
    CHECK(r1.sigma.y.is_identity());

    const Reduction r2 = reduce(scenario_s2());
    CHECK(r2.sigma.inv.k == 1);
    CHECK(r2.a == 2);
    CHECK(r2.w == 2);

    const Reduction r3 = reduce(scenario_s3());
    CHECK(r3.sigma.inv.k == 6);
    CHECK(r3.a == 1);
    CHECK(r3.w == 6);

    const Reduction r4 = reduce(scenario_s4());
    CHECK(r4.sigma.inv.k == 2);
    CHECK(r4.a == 2);
    CHECK(r4.w == 4);
}

TEST_CASE("modular invariants of the desk scenarios") {
    const auto m1 = mod_invariants(reduce(scenario_s1()).sigma);
    CHECK(m1.k == 2);
    CHECK(m1.s == 1);
    CHECK(m1.n_mod == 2);
    CHECK(m1.epsilon == 1);

    const auto m2 = mod_invariants(reduce(scenario_s2()).sigma);
    CHECK(m2.k == 1);
    CHECK(m2.s == 2);
    CHECK(m2.n_mod == 1);
    CHECK(m2.epsilon == 2);

    // ord(2 mod 5) = 4, n = ell-free part of f/s = 2, epsilon = ord(4 mod 5) = 2
    const auto m4 = mod_invariants(reduce(scenario_s4()).sigma);
    CHECK(m4.k == 2);
    CHECK(m4.s == 2);
    CHECK(m4.n_mod == 2);
    CHECK(m4.epsilon == 2);
}

TEST_CASE("twist_fixed") {
    const ModCuspidal s1 = reduce(scenario_s1()).sigma;
    const ModCuspidal s2 = reduce(scenario_s2()).sigma;
    CHECK(twist_fixed(s1, 0));
    CHECK(twist_fixed(s2, 0));
    CHECK(twist_fixed(s1, 1));  // epsilon = 1
    CHECK(!twist_fixed(s2, 1)); // epsilon = 2
    CHECK(twist_fixed(s2, 2));
    CHECK(twist_fixed(s2, -4));
}

TEST_CASE("modular parameter validity") {
    // GL_2(D) with d = 2, q = 2, ell = 3: the identity would need support
    // size 2, but e_y = 1 only allows powers of 3.
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{2, 2},
                                  EndoclassRecord::zero());
    const Element id = Element::make(ctx.ambient, Int(0));
    CHECK(!is_valid_mod_parameter(ctx, id));
    CHECK(!parameter_witness(ctx, id).has_value());
    CHECK_THROWS_AS(make_mod(ctx, id), InvalidArgument);

    // regularity is required
    const auto ctx1 = make_context(make_ground(Int(2), Int(3)), InnerForm{2, 1},
                                   EndoclassRecord::zero());
    CHECK_THROWS_AS(make_mod(ctx1, Element::make(ctx1.ambient, Int(1))), InvalidArgument);
}

TEST_CASE("enumerations are canonical and complete") {
    const auto ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{2, 1},
                                  EndoclassRecord::zero());
    const auto adics = enumerate_adic(ctx);
    REQUIRE(adics.size() == 1);
    CHECK(adics[0].x.exponent == 1);

    const auto mods = enumerate_mod(ctx);
    REQUIRE(mods.size() == 1);
    CHECK(mods[0].y.is_identity());
    CHECK(mods[0].inv.k == 2);

    const auto s3ctx = make_context(make_ground(Int(2), Int(3)), InnerForm{6, 1},
                                    EndoclassRecord::zero());
    for (const AdicCuspidal& rho : enumerate_adic(s3ctx)) {
        CHECK(degree_over(rho.x, s3ctx.q_Dprime) == s3ctx.m_prime);
        CHECK(rho.x == orbit_representative(rho.x, s3ctx.q_Dprime));
    }
}
