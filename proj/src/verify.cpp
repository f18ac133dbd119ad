#include "cuspcount/verify.hpp"

#include <numeric>
#include <sstream>

#include "cuspcount/congruence.hpp"
#include "cuspcount/counting.hpp"
#include "cuspcount/lifting.hpp"
#include "cuspcount/scan.hpp"

namespace cuspcount {

using boost::multiprecision::gcd;

namespace {

std::string point_label(const GridPoint& g) {
    std::ostringstream os;
    os << "q=" << g.ground.q << " ell=" << g.ground.ell << " m=" << g.form.m
       << " d=" << g.form.d;
    return os.str();
}

void merge_into(SuiteResult& total, SuiteResult&& part) {
    total.instances += part.instances;
    for (auto& f : part.failures)
        total.failures.push_back(std::move(f));
    for (const auto& [key, count] : part.counters)
        total.counters[key] += count;
}

/// Run fn over every grid point, deterministically merged. Exceptions from a
/// point become failures instead of aborting the sweep.
template <class Fn>
SuiteResult sweep_grid(const std::string& name, const VerifyOptions& opts, Fn fn) {
    const auto grid = make_grid(opts);
    std::vector<SuiteResult> partial(grid.size());
    const bool parallel = opts.parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
        try {
            fn(grid[i], partial[i]);
        } catch (const std::exception& err) {
            partial[i].failures.push_back({name, point_label(grid[i]), err.what()});
        }
    }
    SuiteResult total;
    total.name = name;
    for (auto& p : partial)
        merge_into(total, std::move(p));
    return total;
}

void expect(SuiteResult& out, const std::string& suite, const std::string& instance, bool cond,
            const std::string& detail) {
    ++out.instances;
    if (!cond)
        out.failures.push_back({suite, instance, detail});
}

/// Ground pairs (q, ell) of the grid, without the (m, d) dimension.
std::vector<GroundData> make_grounds(const VerifyOptions& opts) {
    std::vector<GroundData> grounds;
    for (Int q = 2; q <= opts.q_max; ++q) {
        const auto pp = is_prime_power(q);
        if (!pp)
            continue;
        for (const Int& ell : opts.ells)
            if (ell != pp->prime)
                grounds.push_back(make_ground(q, ell));
    }
    return grounds;
}

} // namespace

std::vector<GridPoint> make_grid(const VerifyOptions& opts) {
    std::vector<GridPoint> grid;
    for (const GroundData& ground : make_grounds(opts))
        for (unsigned m = 1; m <= opts.n_max; ++m)
            for (unsigned d = 1; m * d <= opts.n_max; ++d)
                grid.push_back({ground, InnerForm{m, d}});
    return grid;
}

std::vector<EndoclassRecord> synthetic_endoclasses() {
    return {
        EndoclassRecord::zero(),
        EndoclassRecord{2, 1, Rat(1, 2)},
        EndoclassRecord{2, 2, Rat(1)},
        EndoclassRecord{3, 1, Rat(2, 3)},
        EndoclassRecord{4, 2, Rat(5, 4)},
    };
}

SuiteResult verify_elementary(const VerifyOptions&) {
    SuiteResult out;
    out.name = "elementary_invariants";
    const std::string& s = out.name;

    for (unsigned n = 1; n <= 2000; ++n) {
        Int sum = 0;
        for (const Int& d : divisors(Int(n)))
            sum += moebius(d);
        expect(out, s, "moebius n=" + std::to_string(n), sum == (n == 1 ? 1 : 0),
               "divisor sum of moebius is " + sum.str());
    }

    for (unsigned n = 1; n <= 2000; ++n) {
        for (unsigned p : {2u, 3u, 5u, 7u}) {
            const unsigned v = valuation(Int(n), Int(p));
            const Int rest = coprime_part(Int(n), Int(p));
            expect(out, s, "valuation n=" + std::to_string(n) + " p=" + std::to_string(p),
                   rest % p != 0 && rest * pow_int(Int(p), v) == n,
                   "p-part decomposition failed");
        }
    }

    for (unsigned n = 2; n <= 2000; ++n) {
        for (unsigned a : {2u, 3u, 7u}) {
            if (std::gcd(a, n) != 1)
                continue;
            const Int ord = mult_order(Int(a), Int(n));
            bool minimal = pow_mod(Int(a), ord, Int(n)) == 1 % Int(n);
            for (const Int& dv : divisors(ord))
                if (dv != ord && pow_mod(Int(a), dv, Int(n)) == 1)
                    minimal = false;
            expect(out, s, "mult_order a=" + std::to_string(a) + " n=" + std::to_string(n),
                   minimal, "order " + ord.str() + " is not minimal");
        }
    }

    for (unsigned n = 1; n <= 500; ++n) {
        std::vector<Int> brute;
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0)
                brute.emplace_back(d);
        expect(out, s, "divisors n=" + std::to_string(n), divisors(Int(n)) == brute,
               "divisor list mismatch");
    }
    return out;
}

SuiteResult verify_cyclic_model(const VerifyOptions& opts) {
    SuiteResult out;
    out.name = "cyclic_model";
    const std::string& s = out.name;

    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
        for (unsigned n = 1; n <= 12; ++n) {
            const Int modulus = pow_int(Int(q), n) - 1;
            if (modulus > 20000)
                continue;
            const AmbientField ambient = AmbientField::make(Int(q), n);
            const auto m64 = modulus.convert_to<std::uint64_t>();
            for (std::uint64_t e = 0; e < m64; ++e) {
                const Element x = Element::make(ambient, Int(e));
                for (unsigned k : small_divisors(n)) {
                    const Int sub = pow_int(Int(q), k);
                    const unsigned deg = degree_over(x, sub);
                    const unsigned walk =
                        scan::orbit_of(e, (sub % modulus).convert_to<std::uint64_t>(), m64)
                            .length;
                    expect(out, s,
                           "degree q=" + std::to_string(q) + " n=" + std::to_string(n) +
                               " e=" + std::to_string(e) + " k=" + std::to_string(k),
                           deg == walk && deg == orbit_size(x, sub),
                           "degree != orbit size");
                    const unsigned base_deg = degree_over(x, Int(q));
                    expect(out, s, "subfield-degree formula",
                           deg == base_deg / std::gcd(base_deg, k),
                           "deg over Q^k != deg/(deg,k)");
                }
                for (unsigned ell_small : {2u, 3u, 5u, 7u}) {
                    const Int ell(ell_small);
                    if (Int(q) % ell == 0)
                        continue;
                    const Element y = regular_part(x, ell);
                    const bool idem = regular_part(y, ell) == y;
                    const bool equivariant =
                        regular_part(frobenius(x, Int(q)), ell) == frobenius(y, Int(q));
                    const bool ord_ok = order(y) == coprime_part(order(x), ell);
                    const bool quot_ok = coprime_part(order(x) / gcd(order(x), order(y)), ell) ==
                                         1;
                    expect(out, s,
                           "regular-part q=" + std::to_string(q) + " n=" + std::to_string(n) +
                               " e=" + std::to_string(e) + " ell=" + ell.str(),
                           idem && equivariant && ord_ok && quot_ok,
                           "regular part relations failed");
                }
                if (n <= 6 && 2 * n <= 12) {
                    const Element big = embed(x, 2 * n);
                    expect(out, s, "embed preserves order/degree",
                           order(big) == order(x) &&
                               degree_over(big, Int(q)) == degree_over(x, Int(q)),
                           "embedding changed order or degree");
                }
            }
        }
    }
    (void)opts;
    return out;
}

SuiteResult verify_parameter_relations(const VerifyOptions& opts) {
    return sweep_grid("parameter_relations", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "parameter_relations";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        const std::string at = point_label(g);
        for (const AdicCuspidal& rho : enumerate_adic(ctx)) {
            const std::string inst = at + " x=" + rho.x.exponent.str();
            try {
                const Reduction red = reduce(rho);
                const auto& mi = red.sigma.inv;
                expect(out, s, inst, std::gcd(red.w, ctx.m_prime) == mi.k, "(w, m') != k");
                expect(out, s, inst, std::gcd(red.w, mi.s) == red.a, "(w, s) != a");
                if (!(red.sigma.y == rho.x))
                    expect(out, s, inst,
                           coprime_part(Int(red.a), g.ground.ell) == mi.epsilon,
                           "ell-free part of a != epsilon");
                expect(out, s, inst,
                       twist_fixed(red.sigma, 0) && twist_fixed(red.sigma, mi.epsilon) &&
                           ((mi.epsilon == 1) == twist_fixed(red.sigma, 1)),
                       "twist-fixing predicate inconsistent with epsilon");
            } catch (const std::exception& err) {
                expect(out, s, inst, false, err.what());
            }
        }
        for (const ModCuspidal& sigma : enumerate_mod(ctx)) {
            const std::string inst = at + " y=" + sigma.y.exponent.str();
            const auto& mi = sigma.inv;
            expect(out, s, inst,
                   mi.deg_y * mi.k * mi.s == ctx.m_prime * ctx.d_prime &&
                       ctx.d_prime % mi.s == 0 && ctx.m_prime % mi.k == 0,
                   "degree/stabilizer relation failed");
            if (mi.k > 1)
                expect(out, s, inst, Int(mi.s) % mi.epsilon == 0,
                       "epsilon does not divide s");
        }
    });
}

SuiteResult verify_parameter_validity(const VerifyOptions& opts) {
    return sweep_grid("parameter_validity", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "parameter_validity";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        const Int ell = g.ground.ell;
        const auto regular = orbit_reps_where(
            ctx.ambient, ctx.q_Dprime,
            [&ell](const Element& e) { return order(e) % ell != 0; });
        for (const Element& y : regular) {
            const bool closed = is_valid_mod_parameter(ctx, y);
            const bool brute = parameter_witness(ctx, y).has_value();
            expect(out, s, point_label(g) + " y=" + y.exponent.str(), closed == brute,
                   closed ? "criterion accepts but no witness" : "witness exists but rejected");
        }
    });
}

SuiteResult verify_congruence_bound(const VerifyOptions& opts) {
    return sweep_grid("congruence_bound", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "congruence_bound";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        for (const AdicCuspidal& rho : enumerate_adic(ctx)) {
            const std::string inst = point_label(g) + " x=" + rho.x.exponent.str();
            try {
                const CongruenceReport rep = check_congruence_bound(rho);
                expect(out, s, inst, rep.bound_holds,
                       "t=" + rep.t.str() + " c=" + rep.c.str() + " w=" +
                           std::to_string(rep.w));
            } catch (const std::exception& err) {
                expect(out, s, inst, false, err.what());
            }
        }
    });
}

SuiteResult verify_congruence_gap(const VerifyOptions& opts) {
    return sweep_grid("congruence_gap", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "congruence_gap";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        for (const AdicCuspidal& rho : enumerate_adic(ctx)) {
            const std::string inst = point_label(g) + " x=" + rho.x.exponent.str();
            try {
                if (reduce(rho).w == 1)
                    continue;
                const CongruenceReport rep = check_congruence_gap(rho);
                expect(out, s, inst, rep.gap_identity_holds,
                       "exact t w identity failed: t=" + rep.t.str() + " w=" +
                           std::to_string(rep.w) + " c=" + rep.c.str());
                if (!rep.gap_simple_form_holds)
                    ++out.counters["simple_form_failures"];
                if (!rep.split_by_t_coprimality_agrees)
                    ++out.counters["split_disagreements"];
            } catch (const std::exception& err) {
                expect(out, s, inst, false, err.what());
            }
        }
    });
}

SuiteResult verify_central_bound(const VerifyOptions& opts) {
    return sweep_grid("central_bound", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "central_bound";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        for (const AdicCuspidal& rho : enumerate_adic(ctx)) {
            const std::string inst = point_label(g) + " x=" + rho.x.exponent.str();
            try {
                const CentralCounts cc = central_counts(rho);
                expect(out, s, inst, cc.bound_holds,
                       "T=" + cc.big_t.str() + " C=" + cc.big_c.str());
            } catch (const std::exception& err) {
                expect(out, s, inst, false, err.what());
            }
        }
    });
}

SuiteResult verify_lift_equivalence(const VerifyOptions& opts) {
    return sweep_grid("lift_equivalence", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "lift_equivalence";
        const FieldContext ctx = make_context(g.ground, g.form, EndoclassRecord::zero());
        if (ctx.ambient.modulus > global_caps().enumeration)
            return;
        const Int& q = g.ground.q;
        const Int& ell = g.ground.ell;
        const unsigned a_max = ctx.m_prime * ctx.d_prime;

        for (const ModCuspidal& sigma : enumerate_mod(ctx)) {
            const std::string inst = point_label(g) + " y=" + sigma.y.exponent.str();
            const auto& mi = sigma.inv;

            const LiftIdentityReport ids = check_lift_identities(sigma);
            if (ids.applicable) {
                expect(out, s, inst, ids.epsilon_divides_s, "epsilon does not divide s");
                expect(out, s, inst,
                       ids.a1_restatement_agrees && ids.restatement_agrees_all_a,
                       "valuation restatement of the criterion disagrees");
            }

            for (unsigned a = 1; a <= a_max; ++a) {
                std::string ainst = inst + " a=" + std::to_string(a);
                try {
                    const LiftReport rep = lift_criterion(sigma, a);
                    ++out.instances;
                    if (!rep.witness)
                        continue;
                    const Element& x = *rep.witness;
                    const Int ord_z = order(Element::make(
                        ctx.ambient, x.exponent - sigma.y.exponent));
                    expect(out, s, ainst, coprime_part(ord_z, ell) == 1,
                           "witness ell-part has impure order");
                    const unsigned r = valuation(ord_z, ell);
                    const Int level = pow_int(ell, r);
                    const Int ord45 =
                        mult_order(pow_mod(q, mi.f_rho / mi.k, level), level);
                    const Int ord52 = mult_order(
                        pow_mod(q, mi.f_rho / (mi.k * mi.s), level), level);
                    expect(out, s, ainst, ord45 == mi.k,
                           "membership order characterization failed");
                    expect(out, s, ainst, ord52 == Int(a) * mi.k,
                           "degree order characterization failed");
                    const unsigned vn = valuation(ord52, ell);
                    expect(out, s, ainst,
                           vn == valuation(Int(mi.k), ell) +
                                     std::min(vn, valuation(Int(mi.s), ell)),
                           "valuation identity on witness order failed");
                    const Reduction back = reduce(make_adic(ctx, x));
                    expect(out, s, ainst,
                           same_class(back.sigma, sigma) && back.a == a &&
                               back.w == a * mi.k,
                           "witness does not reduce back to (sigma, a, w)");
                } catch (const std::exception& err) {
                    expect(out, s, ainst, false, err.what());
                }
            }

            // Both order characterizations, in both directions, over the whole
            // ell-primary component.
            const unsigned alpha = valuation(ctx.ambient.modulus, ell);
            const Int sylow = pow_int(ell, alpha);
            const Int stride = ctx.ambient.modulus / sylow;
            for (Int j = 0; j < sylow; ++j) {
                const Element x = Element::make(ctx.ambient, sigma.y.exponent + j * stride);
                const Int ord_z = sylow / gcd(j, sylow);
                const unsigned r = valuation(ord_z, ell);
                const Int level = pow_int(ell, r);
                const bool in_x = degree_over(x, ctx.q_Dprime) == ctx.m_prime;
                const bool ord45_ok =
                    mult_order(pow_mod(q, mi.f_rho / mi.k, level), level) == mi.k;
                expect(out, s, inst + " j=" + j.str(), in_x == ord45_ok,
                       "membership biconditional failed");
                const unsigned deg_x = degree_over(x, ctx.q_E);
                const Int ord52 =
                    mult_order(pow_mod(q, mi.f_rho / (mi.k * mi.s), level), level);
                for (unsigned a = 1; a <= a_max; ++a) {
                    const bool deg_ok = deg_x == a * mi.k * mi.deg_y;
                    const bool ord52_ok = ord52 == Int(a) * mi.k;
                    expect(out, s, inst + " j=" + j.str() + " a=" + std::to_string(a),
                           deg_ok == ord52_ok, "degree biconditional failed");
                }
            }
        }
    });
}

SuiteResult verify_count_level_zero(const VerifyOptions& opts) {
    SuiteResult out;
    out.name = "count_level_zero";
    const std::string& s = out.name;
    for (const GroundData& ground : make_grounds(opts)) {
        for (unsigned m = 1; m <= opts.n_max; ++m) {
            for (unsigned d = 1; m * d <= opts.n_max; ++d) {
                const unsigned n = m * d;
                for (unsigned w = 1; w <= n; ++w) {
                    if (n % w != 0)
                        continue;
                    std::ostringstream inst;
                    inst << "q=" << ground.q << " ell=" << ground.ell << " m=" << m
                         << " d=" << d << " w=" << w;
                    try {
                        const Int count = count_level_zero(ground, m, d, w);
                        // sum of 1/deg over the regular set, as an exact
                        // rational, must equal the class count.
                        const AmbientField ambient = AmbientField::make(ground.q, n / w);
                        Rat weighted = 0;
                        Rat strict = 0;
                        const Int w0 = coprime_part(Int(w), ground.ell);
                        for (Int e = 0; e < ambient.modulus; ++e) {
                            const Element y = Element::make(ambient, e);
                            if (order(y) % ground.ell == 0)
                                continue;
                            const unsigned deg = degree_over(y, ground.q);
                            const bool order_cond =
                                mult_order(pow_mod(ground.q, deg, ground.ell), ground.ell) ==
                                w0;
                            if (order_cond)
                                strict += Rat(1, deg);
                            if (w == 1 || order_cond)
                                weighted += Rat(1, deg);
                        }
                        expect(out, s, inst.str(), weighted == Rat(count),
                               "sum of 1/deg = " + weighted.str() + " but class count = " +
                                   count.str());
                        // at w = 1 the literal order condition would exclude
                        // liftable classes; count how often it strictly cuts
                        if (w == 1 && strict != weighted)
                            ++out.counters["w1_order_condition_too_strict"];
                    } catch (const std::exception& err) {
                        expect(out, s, inst.str(), false, err.what());
                    }
                }
            }
        }
    }
    return out;
}

SuiteResult verify_correspondence(const VerifyOptions& opts) {
    return sweep_grid("correspondence", opts, [](const GridPoint& g, SuiteResult& out) {
        const std::string& s = out.name = "correspondence";
        const unsigned n = g.form.n();
        for (unsigned w = 1; w <= n; ++w) {
            if (n % w != 0)
                continue;
            const std::string inst = point_label(g) + " w=" + std::to_string(w);
            try {
                const CorrespondenceReport rep =
                    check_correspondence(g.ground, g.form.m, g.form.d, w);
                expect(out, s, inst, rep.ok(),
                       std::string(rep.surjective ? "" : "not surjective; ") +
                           (rep.fibers_are_orbits ? "" : "fibers are not orbits; ") +
                           (rep.identities_hold ? "" : "degree identities failed"));
            } catch (const std::exception& err) {
                expect(out, s, inst, false, err.what());
            }
        }
    });
}

SuiteResult verify_cross_division(const VerifyOptions& opts) {
    SuiteResult out;
    out.name = "cross_division";
    const std::string& s = out.name;
    const auto endoclasses = synthetic_endoclasses();
    for (const GroundData& ground : make_grounds(opts)) {
        for (unsigned n = 1; n <= opts.n_max; ++n) {
            for (unsigned w = 1; w <= n; ++w) {
                if (n % w != 0)
                    continue;
                std::ostringstream inst;
                inst << "q=" << ground.q << " ell=" << ground.ell << " n=" << n
                     << " w=" << w;
                try {
                    CountQuery query;
                    query.ground = ground;
                    query.n = n;
                    query.w = w;
                    query.endoclasses = endoclasses;
                    const CountTable table = count_table(query);
                    expect(out, s, inst.str(), table.all_equal, "totals differ across (m, d)");
                } catch (const std::exception& err) {
                    expect(out, s, inst.str(), false, err.what());
                }
            }
        }
    }
    return out;
}

VerifySummary run_verify(const VerifyOptions& opts) {
    VerifySummary summary;
    summary.suites.push_back(verify_elementary(opts));
    summary.suites.push_back(verify_cyclic_model(opts));
    summary.suites.push_back(verify_parameter_relations(opts));
    summary.suites.push_back(verify_parameter_validity(opts));
    summary.suites.push_back(verify_congruence_bound(opts));
    summary.suites.push_back(verify_congruence_gap(opts));
    summary.suites.push_back(verify_central_bound(opts));
    summary.suites.push_back(verify_lift_equivalence(opts));
    summary.suites.push_back(verify_count_level_zero(opts));
    summary.suites.push_back(verify_correspondence(opts));
    summary.suites.push_back(verify_cross_division(opts));
    return summary;
}

} // namespace cuspcount
