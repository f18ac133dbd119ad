// Command-line surface: exact invariant reports, lift checks, class-count
// tables and the verification sweep, all emitted as deterministic JSON.
//
// Exit codes: 0 success, 1 verification failures, 2 usage or invalid
// parameters, 3 enumeration cap exceeded, 4 internal consistency failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cuspcount/congruence.hpp"
#include "cuspcount/counting.hpp"
#include "cuspcount/lifting.hpp"
#include "cuspcount/report.hpp"
#include "cuspcount/verify.hpp"

namespace cc = cuspcount;

namespace {

cc::Int parse_int(const std::string& text, const char* what) {
    try {
        return cc::Int(text);
    } catch (const std::exception&) {
        throw cc::InvalidArgument(std::string("cannot parse ") + what + ": " + text);
    }
}

cc::Rat parse_rat(const std::string& text, const char* what) {
    const auto slash = text.find('/');
    const cc::Int num = parse_int(text.substr(0, slash), what);
    cc::Int den = 1;
    if (slash != std::string::npos)
        den = parse_int(text.substr(slash + 1), what);
    if (den < 1)
        throw cc::InvalidArgument(std::string(what) + ": denominator must be positive");
    return cc::Rat(num, den);
}

cc::EndoclassRecord parse_endo(const std::string& text) {
    // "g,f,num/den"
    const auto first = text.find(',');
    const auto second = text.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw cc::InvalidArgument("--endo expects g,f,level as in 2,1,1/2");
    cc::EndoclassRecord endo;
    endo.deg = static_cast<unsigned>(std::stoul(text.substr(0, first)));
    endo.res_deg = static_cast<unsigned>(std::stoul(text.substr(first + 1, second - first - 1)));
    endo.level = parse_rat(text.substr(second + 1), "--endo level");
    if (endo.level < 0)
        throw cc::InvalidArgument("--endo level must be >= 0");
    return endo;
}

std::vector<std::pair<unsigned, unsigned>> parse_pairs(const std::string& text) {
    std::vector<std::pair<unsigned, unsigned>> pairs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw cc::InvalidArgument("--pairs expects m:d,m:d,...");
        pairs.emplace_back(static_cast<unsigned>(std::stoul(item.substr(0, colon))),
                           static_cast<unsigned>(std::stoul(item.substr(colon + 1))));
        pos = comma + 1;
    }
    return pairs;
}

struct ElementSpec {
    std::optional<std::string> exponent;
    std::optional<std::string> order;
    std::optional<unsigned> ambient_degree;
};

cc::Element resolve_element(const cc::FieldContext& ctx, const ElementSpec& spec) {
    cc::AmbientField ambient = ctx.ambient;
    if (spec.ambient_degree) {
        if (*spec.ambient_degree == 0 || ctx.ambient.degree % *spec.ambient_degree != 0)
            throw cc::InvalidArgument("--ambient-degree must divide m'd' = " +
                                      std::to_string(ctx.ambient.degree));
        ambient = cc::AmbientField::make(ctx.q_E, *spec.ambient_degree);
    }
    if (spec.exponent.has_value() == spec.order.has_value())
        throw cc::InvalidArgument("give exactly one of --exponent and --order");
    if (spec.exponent)
        return cc::Element::make(ambient, parse_int(*spec.exponent, "exponent"));
    const cc::Int ord = parse_int(*spec.order, "order");
    if (ord < 1 || ambient.modulus % ord != 0)
        throw cc::InvalidArgument("--order must divide the ambient modulus " +
                                  ambient.modulus.str());
    // minimal exponent of the requested order
    return cc::Element::make(ambient, ambient.modulus / ord);
}

cc::Json context_json(const cc::FieldContext& ctx) {
    return cc::Json{
        {"ambient_degree", ctx.ambient.degree},
        {"d_prime", ctx.d_prime},
        {"f_rho", ctx.f_rho()},
        {"m_prime", ctx.m_prime},
        {"modulus", cc::json_int(ctx.ambient.modulus)},
        {"q_Dprime", cc::json_int(ctx.q_Dprime)},
        {"q_E", cc::json_int(ctx.q_E)},
    };
}

const char* gap_case_name(cc::GapCase c) {
    switch (c) {
    case cc::GapCase::supercuspidal:
        return "supercuspidal";
    case cc::GapCase::w_coprime_to_ell:
        return "w_coprime_to_ell";
    case cc::GapCase::w_divisible_by_ell:
        return "w_divisible_by_ell";
    }
    return "?";
}

struct CommonArgs {
    std::string q, ell;
    unsigned m = 1, d = 1;
    std::string endo;

    cc::FieldContext context() const {
        const cc::GroundData ground = cc::make_ground(parse_int(q, "--q"), parse_int(ell, "--ell"));
        const cc::EndoclassRecord record =
            endo.empty() ? cc::EndoclassRecord::zero() : parse_endo(endo);
        return cc::make_context(ground, cc::InnerForm{m, d}, record);
    }

    cc::Json echo() const {
        cc::Json j{{"d", d}, {"ell", cc::json_int(parse_int(ell, "--ell"))}, {"m", m},
                   {"q", cc::json_int(parse_int(q, "--q"))}};
        const cc::EndoclassRecord record =
            endo.empty() ? cc::EndoclassRecord::zero() : parse_endo(endo);
        j["endo"] = cc::json_endoclass(record);
        return j;
    }
};

int run_invariants(const CommonArgs& args, const ElementSpec& spec) {
    const cc::FieldContext ctx = args.context();
    const cc::Element x = resolve_element(ctx, spec);
    const cc::AdicCuspidal rho = cc::make_adic(ctx, x);
    const cc::Reduction red = cc::reduce(rho);
    const cc::ModInvariants mi = red.sigma.inv;
    const cc::CongruenceReport rep = cc::congruence_report(rho);

    cc::Json inputs = args.echo();
    inputs["exponent"] = cc::json_int(rho.x.exponent);
    inputs["ambient_degree"] = spec.ambient_degree ? cc::Json(*spec.ambient_degree)
                                                   : cc::Json(ctx.ambient.degree);

    cc::Json doc{
        {"command", "invariants"},
        {"context", context_json(ctx)},
        {"inputs", inputs},
        {"invariants",
         cc::Json{
             {"C", cc::json_int(rep.big_c)},
             {"T", cc::json_int(rep.big_t)},
             {"a", red.a},
             {"c", cc::json_int(rep.c)},
             {"deg_x", rho.inv.deg_x},
             {"deg_y", mi.deg_y},
             {"epsilon", cc::json_int(mi.epsilon)},
             {"f_rho", rho.inv.f_rho},
             {"k", mi.k},
             {"n_adic", rho.inv.n_adic},
             {"n_mod", mi.n_mod},
             {"s", mi.s},
             {"s_adic", rho.inv.s_adic},
             {"t", cc::json_int(rep.t)},
             {"w", red.w},
         }},
        {"checks",
         cc::Json{
             {"central_bound_holds", rep.central_bound_holds},
             {"congruence_bound_holds", rep.bound_holds},
             {"gap_applicable", rep.w > 1},
             {"gap_case", gap_case_name(rep.gap_case)},
             {"gap_identity_holds", rep.gap_identity_holds},
             {"gap_simple_form_holds", rep.gap_simple_form_holds},
             {"split_by_t_coprimality_agrees", rep.split_by_t_coprimality_agrees},
         }},
        {"flags", cc::Json{{"brute_force_skipped", rep.brute_force_skipped}}},
        {"schema_version", cc::kSchemaVersion},
        {"version", cc::kVersion},
    };
    std::cout << cc::dump_report(doc);
    return 0;
}

int run_lift(const CommonArgs& args, const ElementSpec& spec, unsigned a) {
    const cc::FieldContext ctx = args.context();
    const cc::Element y = resolve_element(ctx, spec);
    const cc::ModCuspidal sigma = cc::make_mod(ctx, y);
    const cc::LiftReport rep = cc::lift_criterion(sigma, a);

    cc::Json inputs = args.echo();
    inputs["a"] = a;
    inputs["y_exponent"] = cc::json_int(sigma.y.exponent);

    cc::Json report{
        {"a", rep.a},
        {"exists_closed", rep.exists_closed},
    };
    report["exists_brute"] =
        rep.exists_brute ? cc::Json(*rep.exists_brute) : cc::Json(nullptr);
    report["witness_exponent"] =
        rep.witness ? cc::json_int(rep.witness->exponent) : cc::Json(nullptr);
    report["u"] = rep.u ? cc::Json(*rep.u) : cc::Json(nullptr);

    cc::Json doc{
        {"command", "lift"},
        {"context", context_json(ctx)},
        {"inputs", inputs},
        {"invariants",
         cc::Json{{"deg_y", sigma.inv.deg_y},
                  {"epsilon", cc::json_int(sigma.inv.epsilon)},
                  {"k", sigma.inv.k},
                  {"n_mod", sigma.inv.n_mod},
                  {"s", sigma.inv.s}}},
        {"report", report},
        {"schema_version", cc::kSchemaVersion},
        {"version", cc::kVersion},
    };
    std::cout << cc::dump_report(doc);
    return 0;
}

int run_count(const std::string& q, const std::string& ell, unsigned n, unsigned w,
              const std::string& pairs, const std::string& endofile, const std::string& j) {
    cc::CountQuery query;
    query.ground = cc::make_ground(parse_int(q, "--q"), parse_int(ell, "--ell"));
    query.n = n;
    query.w = w;
    if (!pairs.empty())
        query.pairs = parse_pairs(pairs);
    query.endoclasses = endofile.empty()
                            ? std::vector<cc::EndoclassRecord>{cc::EndoclassRecord::zero()}
                            : cc::load_endoclass_file(endofile);
    if (!j.empty())
        query.level_bound = parse_rat(j, "--j");

    const cc::CountTable table = cc::count_table(query);

    cc::Json rows = cc::Json::array();
    for (const cc::CountRow& row : table.rows) {
        cc::Json cells = cc::Json::array();
        for (const cc::Int& v : row.per_endoclass)
            cells.push_back(cc::json_int(v));
        rows.push_back(cc::Json{{"d", row.d},
                                {"m", row.m},
                                {"per_endoclass", cells},
                                {"total", cc::json_int(row.total)}});
    }
    cc::Json endos = cc::Json::array();
    for (const cc::EndoclassRecord& e : query.endoclasses)
        endos.push_back(cc::json_endoclass(e));

    cc::Json inputs{{"ell", cc::json_int(query.ground.ell)},
                    {"endoclasses", endos},
                    {"n", n},
                    {"q", cc::json_int(query.ground.q)},
                    {"w", w}};
    inputs["level_bound"] =
        query.level_bound ? cc::json_rat(*query.level_bound) : cc::Json(nullptr);

    cc::Json doc{
        {"command", "count"},
        {"equal_across_pairs", table.all_equal},
        {"inputs", inputs},
        {"rows", rows},
        {"schema_version", cc::kSchemaVersion},
        {"version", cc::kVersion},
    };
    std::cout << cc::dump_report(doc);
    return 0;
}

int run_verify_cmd(const std::string& q_max, unsigned n_max, const std::string& ell_list,
                   bool serial, bool as_json) {
    cc::VerifyOptions opts;
    opts.q_max = parse_int(q_max, "--q-max");
    opts.n_max = n_max;
    opts.parallel = !serial;
    opts.ells.clear();
    std::size_t pos = 0;
    while (pos < ell_list.size()) {
        auto comma = ell_list.find(',', pos);
        if (comma == std::string::npos)
            comma = ell_list.size();
        opts.ells.push_back(parse_int(ell_list.substr(pos, comma - pos), "--ell-list"));
        pos = comma + 1;
    }

    const cc::VerifySummary summary = cc::run_verify(opts);

    if (as_json) {
        cc::Json suites = cc::Json::array();
        for (const cc::SuiteResult& s : summary.suites) {
            cc::Json failures = cc::Json::array();
            for (const cc::VerifyFailure& f : s.failures)
                failures.push_back(cc::Json{{"detail", f.detail}, {"instance", f.instance}});
            cc::Json counters = cc::Json::object();
            for (const auto& [key, value] : s.counters)
                counters[key] = value;
            suites.push_back(cc::Json{{"counters", counters},
                                      {"failures", failures},
                                      {"instances", s.instances},
                                      {"name", s.name}});
        }
        cc::Json doc{
            {"command", "verify"},
            {"grid",
             cc::Json{{"ells", ell_list}, {"n_max", n_max}, {"q_max", q_max}}},
            {"ok", summary.ok()},
            {"schema_version", cc::kSchemaVersion},
            {"suites", suites},
            {"version", cc::kVersion},
        };
        std::cout << cc::dump_report(doc);
    } else {
        for (const cc::SuiteResult& s : summary.suites) {
            std::cout << s.name << ": " << s.instances << " checks, " << s.failures.size()
                      << " failures";
            for (const auto& [key, value] : s.counters)
                std::cout << ", " << key << "=" << value;
            std::cout << "\n";
            std::size_t shown = 0;
            for (const cc::VerifyFailure& f : s.failures) {
                if (++shown > 20) {
                    std::cout << "  ... and " << s.failures.size() - 20 << " more\n";
                    break;
                }
                std::cout << "  FAIL " << f.instance << ": " << f.detail << "\n";
            }
        }
        std::cout << (summary.ok() ? "verify: PASS" : "verify: FAIL") << " ("
                  << summary.total_instances() << " checks)\n";
    }
    return summary.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact congruence, lifting and counting invariants of cuspidal parameters"};
    app.require_subcommand(1);

    std::uint64_t cap = cc::global_caps().enumeration;
    std::uint64_t cross_cap = cc::global_caps().cross_check;
    app.add_option("--cap", cap, "enumeration cap (largest group a scan may walk)")
        ->envname("CUSPCOUNT_ENUM_CAP");
    app.add_option("--cross-check-cap", cross_cap,
                   "cap for redundant brute-force double checks")
        ->envname("CUSPCOUNT_CROSS_CHECK_CAP");

    CommonArgs inv_args;
    ElementSpec inv_spec;
    auto* inv = app.add_subcommand("invariants", "full invariant report for one parameter");
    inv->add_option("--q", inv_args.q, "residue cardinality (prime power)")->required();
    inv->add_option("--ell", inv_args.ell, "banned prime")->required();
    inv->add_option("--m", inv_args.m, "GL_m(D)")->required();
    inv->add_option("--d", inv_args.d, "reduced degree of D")->default_val(1u);
    inv->add_option("--endo", inv_args.endo, "endoclass g,f,level (default: zero)");
    auto* inv_exp = inv->add_option("--exponent", inv_spec.exponent, "parameter exponent");
    inv->add_option("--order", inv_spec.order, "pick the minimal exponent of this order")
        ->excludes(inv_exp);
    inv->add_option("--ambient-degree", inv_spec.ambient_degree,
                    "degree of the field the exponent lives in (divides m'd')");

    CommonArgs lift_args;
    ElementSpec lift_spec;
    unsigned lift_a = 1;
    auto* lift = app.add_subcommand("lift", "lift criterion and witness search");
    lift->add_option("--q", lift_args.q)->required();
    lift->add_option("--ell", lift_args.ell)->required();
    lift->add_option("--m", lift_args.m)->required();
    lift->add_option("--d", lift_args.d)->default_val(1u);
    auto* lift_exp = lift->add_option("--y-exponent", lift_spec.exponent, "regular exponent");
    lift->add_option("--order", lift_spec.order, "pick the minimal exponent of this order")
        ->excludes(lift_exp);
    lift->add_option("--ambient-degree", lift_spec.ambient_degree);
    lift->add_option("--a", lift_a, "requested reduction length")->required();

    std::string cnt_q, cnt_ell, cnt_pairs, cnt_endofile, cnt_j;
    unsigned cnt_n = 1, cnt_w = 1;
    auto* cnt = app.add_subcommand("count", "class-count table across division pairs");
    cnt->add_option("--q", cnt_q)->required();
    cnt->add_option("--ell", cnt_ell)->required();
    cnt->add_option("--n", cnt_n, "total degree")->required();
    cnt->add_option("--w", cnt_w, "required invariant, divides n")->required();
    cnt->add_option("--pairs", cnt_pairs, "m:d list (default: every divisor pair)");
    cnt->add_option("--endofile", cnt_endofile, "endoclass list file (default: zero only)");
    cnt->add_option("--j", cnt_j, "level bound num/den (default: no filter)");

    std::string ver_qmax = "5", ver_ells = "2,3,5,7";
    unsigned ver_nmax = 6;
    bool ver_serial = false, ver_json = false;
    auto* ver = app.add_subcommand("verify", "run every identity suite over a grid");
    ver->add_option("--q-max", ver_qmax)->capture_default_str();
    ver->add_option("--n-max", ver_nmax)->capture_default_str();
    ver->add_option("--ell-list", ver_ells)->capture_default_str();
    ver->add_flag("--serial", ver_serial, "disable the parallel sweep");
    ver->add_flag("--json", ver_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cc::global_caps().enumeration = cap;
    cc::global_caps().cross_check = cross_cap;

    try {
        if (inv->parsed())
            return run_invariants(inv_args, inv_spec);
        if (lift->parsed())
            return run_lift(lift_args, lift_spec, lift_a);
        if (cnt->parsed())
            return run_count(cnt_q, cnt_ell, cnt_n, cnt_w, cnt_pairs, cnt_endofile, cnt_j);
        if (ver->parsed())
            return run_verify_cmd(ver_qmax, ver_nmax, ver_ells, ver_serial, ver_json);
    } catch (const cc::CapExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const cc::ConsistencyFailure& err) {
        std::cerr << "internal consistency failure: " << err.what() << "\n";
        return 4;
    } catch (const cc::InvalidArgument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
