#include "cuspcount/reps.hpp"

#include <algorithm>

#include "cuspcount/scan.hpp"

namespace cuspcount {

using boost::multiprecision::gcd;

GroundData make_ground(const Int& q, const Int& ell) {
    if (q < 2)
        throw InvalidArgument("ground: q must be >= 2");
    auto pp = is_prime_power(q);
    if (!pp)
        throw InvalidArgument("ground: q = " + q.str() + " is not a prime power");
    if (!is_prime(ell))
        throw InvalidArgument("ground: ell = " + ell.str() + " is not prime");
    if (ell == pp->prime)
        throw InvalidArgument("ground: ell = " + ell.str() + " divides q = " + q.str());
    return GroundData{q, ell, pp->prime, pp->exponent};
}

FieldContext make_context(const GroundData& ground, const InnerForm& form,
                          const EndoclassRecord& endo) {
    if (form.m == 0 || form.d == 0)
        throw InvalidArgument("context: m and d must be >= 1");
    if (endo.deg == 0 || endo.res_deg == 0 || endo.deg % endo.res_deg != 0)
        throw InvalidArgument("context: endoclass needs res_deg | deg");
    if (endo.level < 0)
        throw InvalidArgument("context: endoclass level must be >= 0");
    const unsigned n = form.m * form.d;
    if (n % endo.deg != 0)
        throw InvalidArgument("incompatible endoclass: degree " + std::to_string(endo.deg) +
                              " does not divide " + std::to_string(n));
    const unsigned g = endo.deg;
    const unsigned dg = std::gcd(form.d, g);
    const unsigned d_prime = form.d / dg;
    if ((form.m * dg) % g != 0)
        throw ConsistencyFailure("context: m' not integral although deg | md");
    const unsigned m_prime = form.m * dg / g;
    FieldContext ctx;
    ctx.ground = ground;
    ctx.form = form;
    ctx.endo = endo;
    ctx.d_prime = d_prime;
    ctx.m_prime = m_prime;
    ctx.q_E = pow_int(ground.q, endo.res_deg);
    ctx.q_Dprime = pow_int(ctx.q_E, d_prime);
    ctx.ambient = AmbientField::make(ctx.q_E, m_prime * d_prime);
    return ctx;
}

namespace {

Element into_ambient(const FieldContext& ctx, const Element& x) {
    if (x.ambient == ctx.ambient)
        return x;
    if (x.ambient.base_card == ctx.ambient.base_card &&
        ctx.ambient.degree % x.ambient.degree == 0)
        return embed(x, ctx.ambient.degree);
    throw InvalidArgument("element does not live in the context's ambient field");
}

} // namespace

AdicCuspidal make_adic(const FieldContext& ctx, const Element& x) {
    AdicCuspidal rho{ctx, into_ambient(ctx, x), {}};
    if (degree_over(rho.x, ctx.q_Dprime) != ctx.m_prime)
        throw InvalidArgument("not a cuspidal parameter: degree over q_D' is not m'");
    auto& inv = rho.inv;
    inv.deg_x = degree_over(rho.x, ctx.q_E);
    const unsigned big_n = ctx.m_prime * ctx.d_prime;
    if (big_n % inv.deg_x != 0)
        throw ConsistencyFailure("adic parameter: deg(x) does not divide m'd'");
    inv.s_adic = big_n / inv.deg_x;
    inv.f_rho = ctx.f_rho();
    if (inv.f_rho % inv.s_adic != 0)
        throw ConsistencyFailure("adic parameter: s does not divide f");
    inv.n_adic = inv.f_rho / inv.s_adic;
    if (std::gcd(inv.s_adic, ctx.form.m) != 1)
        throw ConsistencyFailure("adic parameter: s not coprime to m");
    return rho;
}

AdicInvariants adic_invariants(const AdicCuspidal& rho) { return rho.inv; }

std::optional<Element> parameter_witness(const FieldContext& ctx, const Element& y,
                                         std::uint64_t cap) {
    if (ctx.ambient.modulus > cap)
        throw CapExceeded("parameter_witness", ctx.ambient.modulus.str());
    const auto m = ctx.ambient.modulus.convert_to<std::uint64_t>();
    const unsigned alpha = valuation(ctx.ambient.modulus, ctx.ground.ell);
    const auto sylow = pow_int(ctx.ground.ell, alpha).convert_to<std::uint64_t>();
    const std::uint64_t stride = m / sylow;
    const auto frob = (ctx.q_Dprime % ctx.ambient.modulus).convert_to<std::uint64_t>();
    const auto ye = y.exponent.convert_to<std::uint64_t>();
    for (std::uint64_t j = 0; j < sylow; ++j) {
        const std::uint64_t xe = (ye + j * stride) % m;
        if (scan::orbit_of(xe, frob, m).length == ctx.m_prime)
            return Element::make(ctx.ambient, Int(xe));
    }
    return std::nullopt;
}

namespace {

struct Validity {
    bool valid;
    unsigned m_dd;
    Int e_y;
};

Validity closed_form_validity(const FieldContext& ctx, const Element& y) {
    Validity v{};
    v.m_dd = degree_over(y, ctx.q_Dprime);
    const unsigned k = ctx.m_prime / v.m_dd;
    v.e_y = mult_order(pow_mod(ctx.q_Dprime, v.m_dd, ctx.ground.ell), ctx.ground.ell);
    if (k == 1) {
        v.valid = true;
    } else {
        // k must be e_y * ell^i
        v.valid = Int(k) % v.e_y == 0 && coprime_part(Int(k) / v.e_y, ctx.ground.ell) == 1;
    }
    return v;
}

} // namespace

bool is_valid_mod_parameter(const FieldContext& ctx, const Element& y) {
    const Element yy = into_ambient(ctx, y);
    if (order(yy) % ctx.ground.ell == 0)
        return false;
    return closed_form_validity(ctx, yy).valid;
}

ModCuspidal make_mod(const FieldContext& ctx, const Element& y) {
    ModCuspidal sigma{ctx, into_ambient(ctx, y), {}};
    if (order(sigma.y) % ctx.ground.ell == 0)
        throw InvalidArgument("modular parameter must be regular (order coprime to ell)");

    const Validity v = closed_form_validity(ctx, sigma.y);
    if (ctx.ambient.modulus <= global_caps().cross_check) {
        const bool brute = parameter_witness(ctx, sigma.y, global_caps().cross_check).has_value();
        if (brute != v.valid)
            throw ConsistencyFailure("support-size criterion disagrees with witness search");
    }
    if (!v.valid)
        throw InvalidArgument("not a cuspidal parameter: support size fails the criterion");

    auto& inv = sigma.inv;
    inv.m_dd = v.m_dd;
    inv.e_y = v.e_y;
    inv.k = ctx.m_prime / v.m_dd;
    inv.deg_y = degree_over(sigma.y, ctx.q_E);
    const unsigned big_n = ctx.m_prime * ctx.d_prime;
    if (big_n % (inv.k * inv.deg_y) != 0)
        throw ConsistencyFailure("modular parameter: k deg(y) does not divide m'd'");
    inv.s = big_n / (inv.k * inv.deg_y);
    if (inv.s != ctx.d_prime / std::gcd(inv.deg_y, ctx.d_prime) ||
        std::gcd(inv.s, ctx.m_prime / inv.k) != 1)
        throw ConsistencyFailure("modular parameter: stabilizer relations broken");
    inv.f_rho = ctx.f_rho();
    if (inv.f_rho % inv.s != 0)
        throw ConsistencyFailure("modular parameter: s does not divide f");
    inv.n_mod = coprime_part(Int(inv.f_rho / inv.s), ctx.ground.ell).convert_to<unsigned>();
    inv.epsilon = mult_order(pow_mod(ctx.ground.q, inv.n_mod, ctx.ground.ell), ctx.ground.ell);
    const Int e = mult_order(ctx.ground.q % ctx.ground.ell, ctx.ground.ell);
    if (inv.epsilon != e / gcd(e, Int(inv.n_mod)))
        throw ConsistencyFailure("modular parameter: the two routes to epsilon disagree");
    return sigma;
}

ModInvariants mod_invariants(const ModCuspidal& sigma) { return sigma.inv; }

bool twist_fixed(const ModCuspidal& sigma, const Int& i) {
    return i % sigma.inv.epsilon == 0;
}

Reduction reduce(const AdicCuspidal& rho) {
    const Element y = regular_part(rho.x, rho.ctx.ground.ell);
    Reduction red{make_mod(rho.ctx, y), 1, 1};
    const auto& mi = red.sigma.inv;
    if (mi.s % rho.inv.s_adic != 0)
        throw ConsistencyFailure("reduce: s(sigma) not a multiple of s(x)");
    red.a = mi.s / rho.inv.s_adic;
    if (rho.inv.deg_x % mi.deg_y != 0)
        throw ConsistencyFailure("reduce: deg(y) does not divide deg(x)");
    red.w = rho.inv.deg_x / mi.deg_y;
    if (red.w != mi.k * red.a)
        throw ConsistencyFailure("reduce: deg(x)/deg(y) != k a");
    return red;
}

Int canonical_exponent(const ModCuspidal& sigma) {
    return orbit_representative(sigma.y, sigma.ctx.q_Dprime).exponent;
}

bool same_class(const ModCuspidal& a, const ModCuspidal& b) {
    return a.ctx.ambient == b.ctx.ambient && a.ctx.form == b.ctx.form &&
           canonical_exponent(a) == canonical_exponent(b);
}

std::vector<AdicCuspidal> enumerate_adic(const FieldContext& ctx, std::uint64_t cap) {
    if (ctx.ambient.modulus > cap)
        throw CapExceeded("enumerate_adic", ctx.ambient.modulus.str());
    const auto modulus = ctx.ambient.modulus.convert_to<std::uint64_t>();
    const auto frob = (ctx.q_Dprime % ctx.ambient.modulus).convert_to<std::uint64_t>();
    const unsigned target = ctx.m_prime;
    auto mins = scan::orbit_min_scan(
        modulus, frob, [](std::uint64_t, std::uint64_t) { return true; },
        [target](std::uint64_t, std::uint64_t, unsigned deg) { return deg == target; });
    std::vector<AdicCuspidal> out;
    out.reserve(mins.size());
    for (std::uint64_t e : mins)
        out.push_back(make_adic(ctx, Element::make(ctx.ambient, Int(e))));
    return out;
}

std::vector<ModCuspidal> enumerate_mod(const FieldContext& ctx, std::uint64_t cap) {
    if (ctx.ambient.modulus > cap)
        throw CapExceeded("enumerate_mod", ctx.ambient.modulus.str());
    const auto modulus = ctx.ambient.modulus.convert_to<std::uint64_t>();
    const auto frob = (ctx.q_Dprime % ctx.ambient.modulus).convert_to<std::uint64_t>();
    const auto ell = ctx.ground.ell;
    const bool ell_small = ell <= modulus;
    const std::uint64_t ell64 = ell_small ? ell.convert_to<std::uint64_t>() : 0;
    auto mins = scan::orbit_min_scan(
        modulus, frob,
        [ell_small, ell64](std::uint64_t, std::uint64_t ord) {
            return !ell_small || ord % ell64 != 0;
        },
        [](std::uint64_t, std::uint64_t, unsigned) { return true; });
    std::vector<ModCuspidal> out;
    for (std::uint64_t e : mins) {
        const Element y = Element::make(ctx.ambient, Int(e));
        if (is_valid_mod_parameter(ctx, y))
            out.push_back(make_mod(ctx, y));
    }
    return out;
}

} // namespace cuspcount
