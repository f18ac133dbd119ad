#include "cuspcount/counting.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cuspcount/scan.hpp"

namespace cuspcount {

namespace {

/// ok[t] for t | ext_degree: whether a regular element of degree t belongs to
/// the regular set for invariant w. For w > 1 this asks ord(q^t mod ell) to
/// equal the ell-free part of w. At w = 1 the order condition is vacuous:
/// every supercuspidal admits a lift with invariant 1 (the parameter itself),
/// so every regular element qualifies; the order condition is a consequence
/// of the regular part being proper, which only exists for w > 1.
std::vector<char> epsilon_table(const GroundData& ground, unsigned ext_degree, unsigned w) {
    std::vector<char> ok(ext_degree + 1, 0);
    if (w == 1) {
        for (unsigned t : small_divisors(ext_degree))
            ok[t] = 1;
        return ok;
    }
    const Int w0 = coprime_part(Int(w), ground.ell);
    for (unsigned t : small_divisors(ext_degree))
        ok[t] = mult_order(pow_mod(ground.q, t, ground.ell), ground.ell) == w0;
    return ok;
}

} // namespace

Int regular_class_count(const GroundData& ground, unsigned n, unsigned w, std::uint64_t cap) {
    if (n == 0 || w == 0 || n % w != 0)
        throw InvalidArgument("regular_class_count: need w >= 1 dividing n");
    const AmbientField ambient = AmbientField::make(ground.q, n / w);
    if (ambient.modulus > cap)
        throw CapExceeded("regular_class_count", ambient.modulus.str());

    const auto modulus = ambient.modulus.convert_to<std::uint64_t>();
    const auto frob = (ground.q % ambient.modulus).convert_to<std::uint64_t>();
    const bool ell_small = ground.ell <= modulus;
    const std::uint64_t ell64 = ell_small ? ground.ell.convert_to<std::uint64_t>() : 0;
    const auto ok = epsilon_table(ground, n / w, w);

    auto mins = scan::orbit_min_scan(
        modulus, frob,
        [ell_small, ell64](std::uint64_t, std::uint64_t ord) {
            return !ell_small || ord % ell64 != 0;
        },
        [&ok](std::uint64_t, std::uint64_t, unsigned deg) { return ok[deg] != 0; });
    return Int(mins.size());
}

std::vector<ModCuspidal> enumerate_liftable(const GroundData& ground, unsigned m, unsigned d,
                                            unsigned w, std::uint64_t cap) {
    if (m == 0 || d == 0 || w == 0)
        throw InvalidArgument("enumerate_liftable: m, d, w must be >= 1");
    std::vector<ModCuspidal> out;
    for (unsigned u = 1; u <= m; ++u) {
        if (m % u != 0)
            continue;
        const FieldContext ctx = make_context(ground, InnerForm{u, d}, EndoclassRecord::zero());
        for (ModCuspidal& sigma : enumerate_mod(ctx, cap)) {
            if (w % sigma.inv.k != 0)
                continue;
            if (lift_criterion(sigma, w / sigma.inv.k).exists_closed)
                out.push_back(std::move(sigma));
        }
    }
    return out;
}

ModCuspidal cuspidal_from_regular(const GroundData& ground, unsigned m, unsigned d, unsigned w,
                                  const Element& y) {
    const unsigned n = m * d;
    if (w == 0 || n == 0 || n % w != 0)
        throw InvalidArgument("cuspidal_from_regular: need w >= 1 dividing m d");
    const AmbientField expected = AmbientField::make(ground.q, n / w);
    if (!(y.ambient == expected))
        throw InvalidArgument("cuspidal_from_regular: y must live in the degree-n/w ambient");
    if (order(y) % ground.ell == 0)
        throw InvalidArgument("cuspidal_from_regular: y is not regular");
    const unsigned deg = degree_over(y, ground.q);
    if (w > 1) {
        const Int w0 = coprime_part(Int(w), ground.ell);
        if (mult_order(pow_mod(ground.q, deg, ground.ell), ground.ell) != w0)
            throw InvalidArgument(
                "cuspidal_from_regular: ord(q^deg(y)) is not the ell-free part of w");
    }

    const unsigned shared = std::gcd(deg, d);
    const unsigned r = deg / shared;     // degree of y over the D residue field
    const unsigned s_y = d / shared;     // stabilizer order of the attached supercuspidal
    const unsigned k_y = w / std::gcd(w, s_y);
    const unsigned u = k_y * r;
    if (u == 0 || m % u != 0)
        throw ConsistencyFailure("cuspidal_from_regular: k r does not divide m");

    const FieldContext ctx = make_context(ground, InnerForm{u, d}, EndoclassRecord::zero());
    const Element moved = transport(y, u * d);
    ModCuspidal sigma = make_mod(ctx, orbit_representative(moved, ctx.q_Dprime));

    if (sigma.inv.k != k_y || sigma.inv.m_dd != r || sigma.inv.s != s_y)
        throw ConsistencyFailure("cuspidal_from_regular: derived invariants disagree");
    if (sigma.inv.k != std::gcd(w, u))
        throw ConsistencyFailure("cuspidal_from_regular: k != (w, deg sigma)");
    if (k_y > 1 && coprime_part(Int(k_y), ground.ell) != sigma.inv.e_y)
        throw ConsistencyFailure("cuspidal_from_regular: ell-free part of k is not e_y");
    return sigma;
}

CorrespondenceReport check_correspondence(const GroundData& ground, unsigned m, unsigned d,
                                          unsigned w, std::uint64_t cap) {
    const unsigned n = m * d;
    if (w == 0 || n % w != 0)
        throw InvalidArgument("check_correspondence: need w >= 1 dividing m d");

    CorrespondenceReport rep;
    const auto liftable = enumerate_liftable(ground, m, d, w, cap);
    std::map<std::pair<unsigned, Int>, bool> targets; // key -> hit
    for (const ModCuspidal& sigma : liftable)
        targets[{sigma.ctx.form.m, canonical_exponent(sigma)}] = false;
    rep.liftable_count = Int(liftable.size());

    const AmbientField ambient = AmbientField::make(ground.q, n / w);
    if (ambient.modulus > cap)
        throw CapExceeded("check_correspondence", ambient.modulus.str());
    const auto modulus = ambient.modulus.convert_to<std::uint64_t>();
    const auto frob_d = pow_mod(ground.q, d, ambient.modulus).convert_to<std::uint64_t>();
    const auto frob_q = (ground.q % ambient.modulus).convert_to<std::uint64_t>();
    const bool ell_small = ground.ell <= modulus;
    const std::uint64_t ell64 = ell_small ? ground.ell.convert_to<std::uint64_t>() : 0;
    const auto ok = epsilon_table(ground, n / w, w);

    // One canonical element per fiber candidate: the orbits under e -> q^d e.
    auto fiber_mins = scan::orbit_min_scan(
        modulus, frob_d,
        [ell_small, ell64](std::uint64_t, std::uint64_t ord) {
            return !ell_small || ord % ell64 != 0;
        },
        [&ok, frob_q, modulus](std::uint64_t e, std::uint64_t, unsigned) {
            return ok[scan::orbit_of(e, frob_q, modulus).length] != 0;
        });
    rep.class_count = Int(fiber_mins.size());

    // The map factors through these orbits by construction (transport and
    // support degrees are Frobenius-equivariant); what needs checking is that
    // distinct orbits land on distinct parameters, that every value lies in
    // the liftable set, and that each one is hit.
    rep.surjective = true;
    rep.fibers_are_orbits = true;
    rep.identities_hold = true;
    std::map<std::pair<unsigned, Int>, std::uint64_t> image;
    for (std::uint64_t e : fiber_mins) {
        std::optional<ModCuspidal> sigma;
        try {
            sigma = cuspidal_from_regular(ground, m, d, w, Element::make(ambient, Int(e)));
        } catch (const ConsistencyFailure&) {
            rep.identities_hold = false;
            continue;
        }
        const std::pair<unsigned, Int> key{sigma->ctx.form.m, canonical_exponent(*sigma)};
        auto [it, fresh] = image.emplace(key, e);
        if (!fresh)
            rep.fibers_are_orbits = false;
        auto target = targets.find(key);
        if (target == targets.end())
            rep.surjective = false; // image escapes the liftable set
        else
            target->second = true;
    }
    for (const auto& [key, hit] : targets)
        if (!hit)
            rep.surjective = false;
    return rep;
}

Int count_level_zero(const GroundData& ground, unsigned m, unsigned d, unsigned w,
                     std::uint64_t cap) {
    Rat total = 0;
    for (const ModCuspidal& sigma : enumerate_liftable(ground, m, d, w, cap))
        total += Rat(sigma.inv.s, d);
    if (boost::multiprecision::denominator(total) != 1)
        throw ConsistencyFailure("count_level_zero: weighted sum is not an integer: " +
                                 total.str());
    const Int value = boost::multiprecision::numerator(total);
    const Int direct = regular_class_count(ground, m * d, w, cap);
    if (value != direct)
        throw ConsistencyFailure("count_level_zero: " + value.str() +
                                 " != regular class count " + direct.str());
    return value;
}

Int count_for_endoclass(const GroundData& ground, unsigned m, unsigned d,
                        const EndoclassRecord& endo, unsigned w, std::uint64_t cap) {
    const unsigned n = m * d;
    if (w == 0 || n % w != 0)
        throw InvalidArgument("count_for_endoclass: need w >= 1 dividing m d");
    if (endo.deg == 0 || endo.res_deg == 0 || endo.deg % endo.res_deg != 0)
        throw InvalidArgument("count_for_endoclass: endoclass needs res_deg | deg");
    if (n % endo.deg != 0)
        throw InvalidArgument("count_for_endoclass: endoclass degree does not divide m d");
    if ((n / w) % endo.deg != 0)
        return 0; // no class of this endoclass has the requested invariant

    const GroundData reduced =
        make_ground(pow_int(ground.q, endo.res_deg), ground.ell);
    const Int value = regular_class_count(reduced, n / endo.deg, w, cap);

    // Independent route through the reduced inner form.
    const unsigned shared = std::gcd(d, endo.deg);
    const unsigned d_prime = d / shared;
    const unsigned m_prime = m * shared / endo.deg;
    const Int largest = pow_int(reduced.q, m_prime * d_prime) - 1;
    if (largest <= global_caps().cross_check) {
        Rat total = 0;
        for (const ModCuspidal& sigma : enumerate_liftable(reduced, m_prime, d_prime, w, cap))
            total += Rat(sigma.inv.s, d_prime);
        if (total != Rat(value))
            throw ConsistencyFailure("count_for_endoclass: reduced enumeration " + total.str() +
                                     " != " + value.str());
    }
    return value;
}

CountTable count_table(const CountQuery& query, std::uint64_t cap) {
    if (query.n == 0 || query.w == 0 || query.n % query.w != 0)
        throw InvalidArgument("count_table: need w >= 1 dividing n");
    auto pairs = query.pairs;
    if (pairs.empty())
        for (unsigned d = 1; d <= query.n; ++d)
            if (query.n % d == 0)
                pairs.emplace_back(query.n / d, d);
    for (const auto& [m, d] : pairs)
        if (m == 0 || d == 0 || m * d != query.n)
            throw InvalidArgument("count_table: pair (" + std::to_string(m) + ", " +
                                  std::to_string(d) + ") does not multiply to n");
    std::sort(pairs.begin(), pairs.end());

    CountTable table;
    for (const auto& [m, d] : pairs) {
        CountRow row{m, d, {}, 0};
        for (const EndoclassRecord& endo : query.endoclasses) {
            const bool level_ok = !query.level_bound || endo.level <= *query.level_bound;
            const bool degree_ok = (query.n / query.w) % endo.deg == 0;
            Int cell = 0;
            if (level_ok && degree_ok)
                cell = count_for_endoclass(query.ground, m, d, endo, query.w, cap);
            row.total += cell;
            row.per_endoclass.push_back(std::move(cell));
        }
        table.rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if (table.rows[i].total != table.rows[0].total) {
            table.all_equal = false;
            throw ConsistencyFailure(
                "count_table: totals disagree between (m, d) = (" +
                std::to_string(table.rows[0].m) + ", " + std::to_string(table.rows[0].d) +
                ") and (" + std::to_string(table.rows[i].m) + ", " +
                std::to_string(table.rows[i].d) + ")");
        }
    }
    return table;
}

} // namespace cuspcount
