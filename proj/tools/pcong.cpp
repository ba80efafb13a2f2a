// Command-line front end: partition tables, eta expansions, operators, the congruence pipeline,
// statement verification, witness search and progression scans.
//
// Exit status: 0 when every reported claim passes, 1 when a counterexample was found, 2 on a
// resource or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcong/cache.hpp"
#include "pcong/config.hpp"
#include "pcong/congruence.hpp"
#include "pcong/error.hpp"
#include "pcong/eta.hpp"
#include "pcong/growth.hpp"
#include "pcong/modarith.hpp"
#include "pcong/operators.hpp"
#include "pcong/treneer.hpp"

using namespace pcong;
using nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kCounterexample = 1;
constexpr int kResource = 2;

struct Output {
    Format format = Format::Json;
    bool timing = false;
};

std::string rational_string(const Rational& q)
{
    return q.get_str();
}

ordered_json series_json(const QSeries& s, std::int64_t show)
{
    ordered_json j;
    j["ring"] = s.ring().name();
    j["grain"] = s.grain();
    j["start"] = s.start();
    j["truncation"] = s.truncation();
    auto& c = j["coefficients"] = ordered_json::array();
    const std::int64_t stop = std::min(s.truncation(), s.start() + show);
    for (std::int64_t e = s.start(); e < stop; ++e) {
        if (s.is_zero_at(e)) continue;
        ordered_json t;
        t["exponent"] = e;
        t["coefficient"] = s.coeff(e).get_str();
        c.push_back(t);
    }
    return j;
}

void print_series(const QSeries& s, std::int64_t show, const Output& out, ordered_json extra = {})
{
    if (out.format == Format::Json) {
        auto j = series_json(s, show);
        for (auto& [k, v] : extra.items()) j[k] = v;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "exponent_numerator,grain,coefficient\n";
    const std::int64_t stop = std::min(s.truncation(), s.start() + show);
    for (std::int64_t e = s.start(); e < stop; ++e)
        if (!s.is_zero_at(e)) std::cout << e << ',' << s.grain() << ',' << s.coeff(e).get_str() << "\n";
}

int emit_reports(const std::vector<VerificationReport>& reports, const Output& out)
{
    std::cout << render(reports, out.format, out.timing);
    for (const auto& r : reports)
        if (r.status == Status::Fail) return kCounterexample;
    return kPass;
}

ordered_json candidate_json(const WitnessCandidate& c)
{
    ordered_json j;
    j["Q"] = c.q;
    j["beta"] = c.bd.beta;
    j["delta"] = c.bd.delta;
    j["chi_Q"] = c.chi_q;
    j["evidence"] = c.evidence;
    j["prefilter_passed"] = c.prefilter_passed;
    j["nonzero_count"] = c.nonzero_count;
    if (c.first_nonzero) j["first_nonzero"] = *c.first_nonzero;
    j["consistent"] = c.consistent;
    if (!c.inconsistent_at.empty()) j["inconsistent_at"] = c.inconsistent_at;
    j["direct_status"] = to_string(c.direct.status);
    j["direct_checked"] = c.direct.checked;
    j["direct_skipped"] = c.direct.skipped;
    auto& res = j["direct_residues"] = ordered_json::array();
    for (const auto& o : c.direct.residues) res.push_back({{"n", o.n}, {"index", o.index}, {"residue", o.residue}});
    return j;
}

QSeries read_series_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    return read_record(in);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Partition congruences: tables, eta quotients, Hecke operators and verification"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg = RunConfig::from_environment();
    std::string budget_text;
    std::string format_text = "json";
    std::string cache_dir = cfg.cache_dir.string();
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1U, 256U));
    app.add_option("--memory-budget", budget_text, "Memory budget, e.g. 2G or 512M");
    app.add_option("--seed", cfg.seed, "Seed for randomized runs");
    app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--long", cfg.long_run, "Include long-running checks");
    app.add_flag("--timing", cfg.timing, "Include elapsed times in reports");
    app.add_option("--cache-dir", cache_dir, "Coefficient table cache (default $PCONG_CACHE_DIR)");

    // gamma
    auto* gamma = app.add_subcommand("gamma", "Conjugacy growth coefficients");
    std::string group = "sym";
    std::int64_t gamma_n = -1;
    std::int64_t identity_limit = 0;
    bool check_identity = false;
    gamma->add_option("--group", group)->check(CLI::IsMember({"sym", "alt"}));
    gamma->add_option("--n", gamma_n, "Index");
    gamma->add_flag("--check-eq7", check_identity, "Check 2 gamma_Alt(2n) = gamma_Sym(n) + p_2(2n)");
    gamma->add_option("--limit", identity_limit, "Identity checked for n < limit");

    // eta
    auto* eta = app.add_subcommand("eta", "Eta-quotient expansion and modularity data");
    std::uint64_t level = 1;
    std::string exps;
    std::int64_t eta_t = 10;
    bool eta_mod = false;
    bool eta_cusps = false;
    eta->add_option("--level", level)->required();
    eta->add_option("--exp", exps, "delta:r,delta:r,...")->required();
    eta->add_option("--truncate", eta_t);
    eta->add_flag("--check-modularity", eta_mod);
    eta->add_flag("--cusp-orders", eta_cusps);

    // op
    auto* op = app.add_subcommand("op", "Apply U, V or a Hecke operator to a stored series");
    std::string apply;
    std::string input;
    std::string op_output;
    std::int64_t weight = 1;
    int chi = 1;
    std::int64_t show = 50;
    op->add_option("--apply", apply, "U:d, V:d or hecke:p")->required();
    op->add_option("--input", input, "Series record or cache file")->required();
    op->add_option("--weight", weight, "Hecke weight k");
    op->add_option("--chi", chi, "Character value chi(p)")->check(CLI::Range(-1, 1));
    op->add_option("--output", op_output, "Write the result as a series record");
    op->add_option("--show", show, "Number of exponents to print");

    // treneer
    auto* tr = app.add_subcommand("treneer", "Build f, f_m, F and g for (ell, j)");
    std::uint64_t ell = 5;
    unsigned j = 1;
    std::int64_t tr_t = 100;
    bool verify_g = false;
    tr->add_option("--ell", ell);
    tr->add_option("--j", j);
    tr->add_option("--truncate", tr_t);
    tr->add_flag("--verify-g", verify_g);

    // verify
    auto* ver = app.add_subcommand("verify", "Check a congruence statement over a range");
    std::string theorem;
    bool example_block = false;
    bool examples = false;
    std::int64_t nmax = 200;
    std::uint64_t q = 0;
    ver->add_option("--theorem", theorem)->check(CLI::IsMember({"cong1", "ramanujan", "atkin", "sym", "growth-identity"}));
    ver->add_flag("--example-block", example_block);
    ver->add_flag("--examples", examples, "Two-colored congruences mod 5 and 7 on residue classes");
    ver->add_option("--ell", ell);
    ver->add_option("--j", j);
    ver->add_option("--nmax", nmax);
    ver->add_option("--q", q, "Witness prime for --theorem sym");

    // witness
    auto* wit = app.add_subcommand("witness", "Search for witness primes by the truncated Hecke test");
    std::uint64_t qbound = 5000;
    std::int64_t wit_t = 50;
    std::int64_t wit_nmax = 20;
    wit->add_option("--ell", ell);
    wit->add_option("--j", j);
    wit->add_option("--qbound", qbound);
    wit->add_option("--truncate", wit_t);
    wit->add_option("--verify-nmax", wit_nmax);

    // scan
    auto* scan = app.add_subcommand("scan", "Search progressions A n + B on which a function vanishes");
    std::string function = "p";
    std::uint64_t modulus = 5;
    std::int64_t abound = 10;
    scan->add_option("--function", function)->check(CLI::IsMember({"p", "p2", "gamma_sym", "gamma_alt"}));
    scan->add_option("--mod", modulus);
    scan->add_option("--abound", abound);
    scan->add_option("--nmax", nmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kResource;
    }

    try {
        if (!budget_text.empty()) cfg.memory_budget = parse_byte_size(budget_text);
        cfg.format = format_text == "csv" ? Format::Csv : Format::Json;
        cfg.cache_dir = cache_dir;
        cfg.apply();
        Cache cache = cfg.cache_dir.empty() ? Cache() : Cache(cfg.cache_dir);
        const Output out{cfg.format, cfg.timing};

        if (*gamma) {
            if (check_identity) {
                if (identity_limit < 1) throw DomainError("--check-eq7 needs --limit N");
                return emit_reports({check_eq7(identity_limit)}, out);
            }
            if (gamma_n < 0) throw DomainError("gamma needs --n or --check-eq7");
            const auto tables = load_growth_tables(cache, Ring::integers(), gamma_n + 1);
            const Int v = group == "sym" ? tables.gamma_sym(gamma_n) : tables.gamma_alt(gamma_n);
            if (out.format == Format::Json) {
                ordered_json jv;
                jv["group"] = group;
                jv["n"] = gamma_n;
                jv["value"] = v.get_str();
                std::cout << jv.dump(2) << "\n";
            } else {
                std::cout << "group,n,value\n" << group << ',' << gamma_n << ',' << v.get_str() << "\n";
            }
            return kPass;
        }

        if (*eta) {
            const auto e = EtaQuotient::parse(level, exps);
            const auto s = expand(e, eta_t, Ring::integers());
            ordered_json extra;
            extra["level"] = e.level();
            extra["exponents"] = e.to_string();
            if (eta_mod) {
                const auto m = modularity_check(e);
                ordered_json mj;
                mj["weight"] = rational_string(m.weight);
                mj["s"] = rational_string(m.s);
                mj["delta_sum_ok"] = m.delta_sum_ok;
                mj["level_sum_ok"] = m.level_sum_ok;
                mj["integral_weight"] = m.integral_weight;
                if (m.integral_weight) mj["character_top"] = m.character_top.get_str();
                extra["modularity"] = mj;
            }
            if (eta_cusps) {
                auto& arr = extra["cusp_orders"] = ordered_json::array();
                for (const auto& c : cusps(e.level())) {
                    ordered_json cj;
                    cj["a"] = c.a;
                    cj["c"] = c.c;
                    cj["width"] = cusp_width(e.level(), static_cast<std::uint64_t>(c.c));
                    cj["order"] = rational_string(cusp_order(e, c.a, c.c));
                    arr.push_back(cj);
                }
            }
            print_series(s, 24 * eta_t, out, extra);
            return kPass;
        }

        if (*op) {
            const auto s = read_series_file(input);
            const auto colon = apply.find(':');
            if (colon == std::string::npos) throw DomainError("--apply expects U:d, V:d or hecke:p");
            const std::string kind = apply.substr(0, colon);
            const auto d = std::stoll(apply.substr(colon + 1));
            QSeries r = s;
            if (kind == "U")
                r = u_op(s, d);
            else if (kind == "V")
                r = v_op(s, d);
            else if (kind == "hecke")
                r = hecke(s, static_cast<std::uint64_t>(d), weight, chi);
            else
                throw DomainError("unknown operator '" + kind + "'");
            if (!op_output.empty()) {
                std::ofstream o(op_output, std::ios::binary);
                write_record(o, r);
                if (!o) throw Error("cannot write " + op_output);
            }
            print_series(r, show, out, {{"operator", apply}});
            return kPass;
        }

        if (*tr) {
            const auto ctx = PipelineContext::make(ell, j);
            const auto budget = truncation_budget(ctx, tr_t);
            const Ring ring = Ring::modular(ctx.modulus());
            const auto f = cache.get_or_build("f", ring, budget.f_truncation);
            const auto fm = build_fm(f, ctx.m, ell, tr_t);
            const auto F = build_F(ell, tr_t, ring);
            const auto g = build_g(ctx, f, tr_t);
            std::vector<VerificationReport> reports;
            if (verify_g) {
                const auto add_check = [&](const std::string& provenance, const std::string& what, const QSeries& a,
                                           const QSeries& b, std::uint64_t modulus = 0) {
                    if (modulus == 0) modulus = ctx.modulus();
                    VerificationReport r;
                    r.claim.function = "identity";
                    r.claim.modulus = modulus;
                    r.claim.provenance = provenance;
                    r.claim.statement = what;
                    const auto c = is_congruent(a, b, modulus);
                    r.n_from = std::max(a.start(), b.start());
                    r.n_to = c.compared_to - 1;
                    r.checked = static_cast<std::uint64_t>(std::max<std::int64_t>(0, c.compared_to - r.n_from));
                    r.truncation = std::min(a.truncation(), b.truncation());
                    if (!c.congruent) r.counterexamples.push_back({*c.first_mismatch, *c.first_mismatch, 0});
                    r.finalize();
                    reports.push_back(std::move(r));
                };
                const auto step = static_cast<std::int64_t>(ctx.step());
                const auto l = static_cast<std::int64_t>(ell);

                // a(12 k - 1) = p_2(k) wherever f is known.
                const std::int64_t kmax = (f.truncation() + 1) / 12 + 1;
                const auto p2 = PartitionTable::colored(2, kmax, ring);
                QSeries::Residues spread(static_cast<std::size_t>(f.truncation() + 1), 0);
                for (std::int64_t k = 0; k < kmax; ++k)
                    if (12 * k - 1 < f.truncation()) spread[static_cast<std::size_t>(12 * k)] = p2.residue(k);
                add_check("Section 4", "a(12k - 1) == p_2(k)", f,
                          QSeries(ring, 1, -1, f.truncation(), std::move(spread)));

                // Coefficients of f_m and g both equal a(ell^m n) off multiples of ell and vanish on them.
                QSeries::Residues expect(static_cast<std::size_t>(tr_t), 0);
                for (std::int64_t n = 1; n < tr_t; ++n)
                    if (n % l != 0) expect[static_cast<std::size_t>(n)] = f.residue(step * n);
                const QSeries telescoped(ring, 1, 0, tr_t, std::move(expect));
                add_check("Prop 4.5", "f_m == sum_{ell !| n} a(ell^m n) q^n", fm, telescoped);

                add_check("Prop 4.2", "F == 1 (mod ell)", F, QSeries::one(ring, tr_t), ell);
                const auto collapse = static_cast<std::uint64_t>(ipow(l, ctx.j - 1));
                add_check("Prop 4.2", "F^(ell^(j-1)) == 1 (mod ell^j)", pow(F, collapse), QSeries::one(ring, tr_t));
                add_check("Prop 4.2", "g == f_m (mod ell^j)", g, fm);
                add_check("Prop 4.2", "g == sum_{ell !| n} a(ell^m n) q^n (mod ell^j)", g, telescoped);
            }
            if (out.format == Format::Json) {
                ordered_json jt;
                jt["ell"] = ell;
                jt["j"] = j;
                jt["m"] = ctx.m;
                jt["beta"] = ctx.beta;
                jt["kappa"] = ctx.kappa;
                jt["modulus"] = ctx.modulus();
                ordered_json bj;
                bj["output"] = budget.output;
                bj["f_truncation"] = budget.f_truncation;
                bj["F_truncation"] = budget.F_truncation;
                bj["bytes"] = budget.bytes;
                jt["budget"] = bj;
                jt["g"] = series_json(g, std::min<std::int64_t>(tr_t, 60));
                if (verify_g) jt["checks"] = ordered_json::parse(render(reports, Format::Json, out.timing));
                std::cout << jt.dump(2) << "\n";
            } else if (verify_g) {
                std::cout << render(reports, Format::Csv, out.timing);
            } else {
                print_series(g, std::min<std::int64_t>(tr_t, 60), out);
            }
            for (const auto& r : reports)
                if (r.status == Status::Fail) return kCounterexample;
            return kPass;
        }

        if (*ver) {
            std::vector<VerificationReport> reports;
            if (example_block) {
                const auto block = verify_example_block(cfg.long_run, &cache);
                reports.insert(reports.end(), block.begin(), block.end());
            }
            if (examples) {
                const auto lit = verify_examples_11_12(nmax, &cache);
                const auto arg = verify_examples_11_12_argument(nmax, &cache);
                reports.insert(reports.end(), lit.begin(), lit.end());
                reports.insert(reports.end(), arg.begin(), arg.end());
            }
            if (theorem == "cong1") {
                const auto r = verify_cong1(ell, j, nmax, &cache);
                reports.insert(reports.end(), r.begin(), r.end());
            } else if (theorem == "ramanujan") {
                reports.push_back(verify_ramanujan(ell, j, nmax, &cache));
            } else if (theorem == "atkin") {
                reports.push_back(verify_atkin_k2(ell, j, nmax, &cache));
            } else if (theorem == "sym") {
                if (q == 0) throw DomainError("--theorem sym needs --q");
                reports.push_back(verify_sym(ell, j, q, nmax, &cache));
            } else if (theorem == "growth-identity") {
                reports.push_back(check_eq7(nmax + 1));
            }
            if (reports.empty()) throw DomainError("verify needs --theorem, --example-block or --examples");
            return emit_reports(reports, out);
        }

        if (*wit) {
            const auto w = witness_search(ell, j, qbound, wit_t, wit_nmax, &cache);
            if (out.format == Format::Json) {
                ordered_json jw;
                jw["ell"] = ell;
                jw["j"] = j;
                jw["qbound"] = qbound;
                jw["truncate"] = wit_t;
                jw["g_truncation"] = w.g_truncation;
                jw["consistent"] = w.consistent;
                auto& cand = jw["candidates"] = ordered_json::array();
                for (const auto& c : w.candidates) cand.push_back(candidate_json(c));
                auto& rej = jw["rejected"] = ordered_json::array();
                for (const auto& c : w.rejected) rej.push_back(candidate_json(c));
                std::cout << jw.dump(2) << "\n";
            } else {
                std::cout << "Q,beta,delta,chi_Q,evidence,prefilter_passed,first_nonzero,consistent,direct_status,direct_checked\n";
                for (const auto* list : {&w.candidates, &w.rejected})
                    for (const auto& c : *list)
                        std::cout << c.q << ',' << c.bd.beta << ',' << c.bd.delta << ',' << c.chi_q << ',' << c.evidence << ','
                                  << (c.prefilter_passed ? "true" : "false") << ','
                                  << (c.first_nonzero ? std::to_string(*c.first_nonzero) : "") << ','
                                  << (c.consistent ? "true" : "false") << ',' << to_string(c.direct.status) << ','
                                  << c.direct.checked << "\n";
            }
            return w.consistent ? kPass : kCounterexample;
        }

        if (*scan) {
            const auto hits = scan_progressions(function, modulus, abound, nmax, &cache);
            if (out.format == Format::Json) {
                ordered_json js;
                js["function"] = function;
                js["modulus"] = modulus;
                js["abound"] = abound;
                js["nmax"] = nmax;
                auto& arr = js["hits"] = ordered_json::array();
                for (const auto& h : hits)
                    arr.push_back({{"A", h.claim.scale}, {"B", h.claim.offset}, {"primitive", h.primitive}, {"conjectural", true}});
                std::cout << js.dump(2) << "\n";
            } else {
                std::cout << "A,B,primitive\n";
                for (const auto& h : hits) std::cout << h.claim.scale << ',' << h.claim.offset << ',' << (h.primitive ? "true" : "false") << "\n";
            }
            return kPass;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    }
    return kPass;
}
