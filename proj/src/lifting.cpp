#include "cuspcount/lifting.hpp"

#include <numeric>

#include "cuspcount/scan.hpp"

namespace cuspcount {

std::optional<Element> find_lift_witness(const ModCuspidal& sigma, unsigned a,
                                         std::uint64_t cap) {
    if (a == 0)
        throw InvalidArgument("find_lift_witness: a must be >= 1");
    const FieldContext& ctx = sigma.ctx;
    if (ctx.ambient.modulus > cap)
        throw CapExceeded("find_lift_witness", ctx.ambient.modulus.str());

    const auto m = ctx.ambient.modulus.convert_to<std::uint64_t>();
    const unsigned alpha = valuation(ctx.ambient.modulus, ctx.ground.ell);
    const auto sylow = pow_int(ctx.ground.ell, alpha).convert_to<std::uint64_t>();
    const std::uint64_t stride = m / sylow;
    const auto frob_e = (ctx.q_E % ctx.ambient.modulus).convert_to<std::uint64_t>();
    const auto frob_d = (ctx.q_Dprime % ctx.ambient.modulus).convert_to<std::uint64_t>();
    const auto ye = sigma.y.exponent.convert_to<std::uint64_t>();
    const unsigned deg_target = a * sigma.inv.k * sigma.inv.deg_y;

    for (std::uint64_t j = 0; j < sylow; ++j) {
        const std::uint64_t xe = (ye + j * stride) % m;
        if (scan::orbit_of(xe, frob_e, m).length != deg_target)
            continue;
        if (scan::orbit_of(xe, frob_d, m).length != ctx.m_prime)
            continue;
        return Element::make(ctx.ambient, Int(xe));
    }
    return std::nullopt;
}

namespace {

std::optional<unsigned> power_split(unsigned a, const Int& epsilon, const Int& ell) {
    // u with a = epsilon * ell^u, if the decomposition exists.
    if (Int(a) % epsilon != 0)
        return std::nullopt;
    const Int rest = Int(a) / epsilon;
    if (coprime_part(rest, ell) != 1)
        return std::nullopt;
    return valuation(rest, ell);
}

} // namespace

LiftReport lift_criterion(const ModCuspidal& sigma, unsigned a) {
    if (a == 0)
        throw InvalidArgument("lift_criterion: a must be >= 1");
    const auto& inv = sigma.inv;
    const Int& ell = sigma.ctx.ground.ell;

    LiftReport rep;
    rep.a = a;
    rep.u = power_split(a, inv.epsilon, ell);

    if (a == 1) {
        // Supercuspidal parameters always lift; otherwise the twist must act
        // trivially and the stabilizer must be coprime to the support size.
        rep.exists_closed =
            inv.k == 1 || (std::gcd(inv.s, inv.k) == 1 && inv.epsilon == 1);
    } else {
        const unsigned vs = valuation(Int(inv.s), ell);
        rep.exists_closed = inv.s % a == 0 && rep.u.has_value() && *rep.u <= vs &&
                            std::gcd(inv.s / a, inv.k) == 1;
    }

    if (sigma.ctx.ambient.modulus <= global_caps().enumeration) {
        rep.witness = find_lift_witness(sigma, a);
        rep.exists_brute = rep.witness.has_value();
        if (*rep.exists_brute != rep.exists_closed)
            throw ConsistencyFailure("lift criterion and witness search disagree (a = " +
                                     std::to_string(a) + ")");
        if (!*rep.exists_brute)
            rep.witness.reset();
    }
    return rep;
}

LiftIdentityReport check_lift_identities(const ModCuspidal& sigma) {
    LiftIdentityReport rep;
    const auto& inv = sigma.inv;
    if (inv.k == 1)
        return rep; // vacuous for supercuspidal parameters

    rep.applicable = true;
    const Int& ell = sigma.ctx.ground.ell;
    const unsigned vk = valuation(Int(inv.k), ell);
    const unsigned vs = valuation(Int(inv.s), ell);

    rep.epsilon_divides_s = Int(inv.s) % inv.epsilon == 0;

    const bool a1_restated = inv.epsilon == 1 && std::min(vk, vs) == 0;
    rep.a1_restatement_agrees = a1_restated == lift_criterion(sigma, 1).exists_closed;

    const unsigned a_max = sigma.ctx.m_prime * sigma.ctx.d_prime;
    for (unsigned a = 2; a <= a_max; ++a) {
        const auto u = power_split(a, inv.epsilon, ell);
        const bool restated = u.has_value() && *u <= vs && std::min(vk, vs - *u) == 0;
        if (restated != lift_criterion(sigma, a).exists_closed) {
            rep.restatement_agrees_all_a = false;
            break;
        }
    }
    return rep;
}

} // namespace cuspcount
