#include "pcong/congruence.hpp"

#include <algorithm>
#include <chrono>

#include "pcong/error.hpp"
#include "pcong/modarith.hpp"
#include "pcong/operators.hpp"
#include "pcong/parallel.hpp"
#include "pcong/resources.hpp"
#include "pcong/treneer.hpp"

namespace pcong {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t upow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

Cache& cache_or_local(Cache* cache, Cache& local)
{
    return cache != nullptr ? *cache : local;
}

void require_growth_prime(std::uint64_t ell)
{
    if (std::gcd<std::uint64_t>(ell, 24) != 1 || !is_prime_u64(ell)) throw DomainError("ell must be a prime coprime to 24");
}

// Residue of the claim's function at `index` from the tables, reduced into [0, m).
std::uint64_t function_residue(const std::string& fn, const GrowthTables& t, std::int64_t index, std::uint64_t m)
{
    std::uint64_t r = 0;
    if (fn == "p" || fn == "gamma_sym")
        r = t.p().residue(index);
    else if (fn == "p_k:2")
        r = t.p2().residue(index);
    else if (fn == "gamma_alt")
        r = t.gamma_alt_residue(index);
    else
        throw DomainError("no table for function '" + fn + "'");
    return r % m;
}

std::string canonical_function(const std::string& fn)
{
    if (fn == "p2" || fn == "p_2") return "p_k:2";
    return fn;
}

CongruenceClaim progression_claim(std::string fn, std::int64_t a, std::int64_t b, std::uint64_t m, std::string provenance,
                                  std::string statement)
{
    CongruenceClaim c;
    c.function = std::move(fn);
    c.scale = a;
    c.offset = b;
    c.modulus = m;
    c.provenance = std::move(provenance);
    c.statement = std::move(statement);
    return c;
}

VerificationReport trivial(CongruenceClaim claim, std::int64_t n_to, const std::string& why)
{
    VerificationReport r;
    r.claim = std::move(claim);
    r.n_from = 0;
    r.n_to = n_to;
    r.status = Status::TrivialPass;
    r.notes.push_back(why);
    r.finalize();
    return r;
}

// Largest k with scale k + offset <= bound, or -1.
std::int64_t last_counter(std::int64_t scale, std::int64_t offset, std::int64_t bound)
{
    return bound < offset ? -1 : (bound - offset) / scale;
}

std::uint64_t odd_modulus_for(std::uint64_t m)
{
    // gamma_Alt halves its numerator, which needs 2 to be a unit.
    if (m % 2 == 0) throw RingError("gamma_Alt needs an odd modulus");
    return m;
}

} // namespace

GrowthTables load_growth_tables(Cache& cache, const Ring& ring, std::int64_t n)
{
    auto p = cache.get_or_build("p", ring, n);
    auto p2 = cache.get_or_build("p_k:2", ring, n);
    return GrowthTables(PartitionTable(PartitionTable::Kind::Plain, 1, std::move(p)),
                        PartitionTable(PartitionTable::Kind::Colored, 2, std::move(p2)));
}

VerificationReport verify_claim(const CongruenceClaim& claim, const GrowthTables& tables, std::int64_t n_from,
                                std::int64_t n_to, bool record_residues)
{
    const auto t0 = Clock::now();
    if (claim.modulus < 2) throw DomainError("claim modulus must be at least 2");
    if (!tables.ring().is_modular() || tables.ring().modulus() % claim.modulus != 0)
        throw RingError("tables over " + tables.ring().name() + " cannot decide residues mod " + std::to_string(claim.modulus));
    VerificationReport rep;
    rep.claim = claim;
    rep.n_from = n_from;
    rep.n_to = n_to;
    rep.truncation = tables.size();
    if (n_to >= n_from) {
        const std::int64_t top = claim.scale * n_to + claim.offset;
        if (top >= tables.size())
            throw TruncationError("claim reaches index " + std::to_string(top) + " but tables stop at " +
                                  std::to_string(tables.size()));
        struct Chunk {
            std::uint64_t checked = 0;
            std::vector<std::int64_t> skipped;
            std::vector<Observation> bad;
            std::vector<Observation> seen;
        };
        const auto count = static_cast<std::size_t>(n_to - n_from + 1);
        const unsigned workers = count > 100000 ? thread_count() : 1;
        std::vector<Chunk> chunks(std::max(1U, workers));
        const std::size_t per = (count + chunks.size() - 1) / chunks.size();
        parallel_ranges(chunks.size(), 1, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t ci = lo; ci < hi; ++ci) {
                Chunk& ch = chunks[ci];
                const std::size_t a = ci * per;
                const std::size_t b = std::min(count, a + per);
                for (std::size_t i = a; i < b; ++i) {
                    const std::int64_t n = n_from + static_cast<std::int64_t>(i);
                    if (!claim.filter.admits(n)) {
                        ch.skipped.push_back(n);
                        continue;
                    }
                    const std::int64_t index = claim.scale * n + claim.offset;
                    const auto r = function_residue(claim.function, tables, index, claim.modulus);
                    ++ch.checked;
                    if (r != 0) ch.bad.push_back({n, index, r});
                    if (record_residues) ch.seen.push_back({n, index, r});
                }
            }
        });
        for (auto& ch : chunks) {
            rep.checked += ch.checked;
            rep.skipped.insert(rep.skipped.end(), ch.skipped.begin(), ch.skipped.end());
            rep.counterexamples.insert(rep.counterexamples.end(), ch.bad.begin(), ch.bad.end());
            rep.residues.insert(rep.residues.end(), ch.seen.begin(), ch.seen.end());
        }
    }
    rep.finalize();
    rep.elapsed_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

std::int64_t residues_cong1(std::uint64_t ell, unsigned j)
{
    require_growth_prime(ell);
    const std::uint64_t m = upow(ell, j);
    return static_cast<std::int64_t>(invmod(24 % m, m));
}

int growth_exponent(unsigned j)
{
    return static_cast<int>(j / 2) - 1;
}

VerificationReport verify_ramanujan(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache)
{
    if (ell != 5 && ell != 7 && ell != 11) throw DomainError("Ramanujan congruences are stated for ell = 5, 7, 11");
    if (j < 1) throw DomainError("j must be at least 1");
    const auto a = static_cast<std::int64_t>(upow(ell, j));
    const std::uint64_t m = ell == 7 ? upow(7, j / 2 + 1) : upow(ell, j);
    const auto b = residues_cong1(ell, j);
    auto claim = progression_claim("p", a, b, m, "Theorem 2.3",
                                   "p(n) == 0 (mod " + std::to_string(m) + ") for 24n == 1 (mod " + std::to_string(a) + ")");
    const auto k_max = last_counter(a, b, n_max);
    Cache local;
    const auto tables = load_growth_tables(cache_or_local(cache, local), Ring::modular(m), std::max<std::int64_t>(1, a * std::max<std::int64_t>(k_max, 0) + b + 1));
    return verify_claim(claim, tables, 0, k_max);
}

VerificationReport verify_atkin_k2(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache)
{
    if (ell != 5 && ell != 7) throw DomainError("the k = 2 congruences are stated for ell = 5, 7");
    const auto a = static_cast<std::int64_t>(upow(ell, j));
    const auto b = static_cast<std::int64_t>(mulmod(2, invmod(24 % static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(a)), static_cast<std::uint64_t>(a)));
    const int e = growth_exponent(j);
    const std::uint64_t m = e > 0 ? upow(ell, static_cast<unsigned>(e)) : 1;
    auto claim = progression_claim("p_k:2", a, b, m, "Theorem 2.4",
                                   "p_2(n) == 0 (mod " + std::to_string(m) + ") for 24n == 2 (mod " + std::to_string(a) + ")");
    const auto k_max = last_counter(a, b, n_max);
    if (e <= 0) return trivial(claim, k_max, "exponent floor(j/2 - 1) <= 0, modulus 1");
    Cache local;
    const auto tables = load_growth_tables(cache_or_local(cache, local), Ring::modular(m), std::max<std::int64_t>(1, a * std::max<std::int64_t>(k_max, 0) + b + 1));
    return verify_claim(claim, tables, 0, k_max);
}

std::vector<VerificationReport> verify_cong1(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache)
{
    if (ell != 5 && ell != 7) throw DomainError("Theorem 1 is stated for ell = 5, 7");
    const auto a = static_cast<std::int64_t>(upow(ell, j));
    const auto b = residues_cong1(ell, j);
    const int e = growth_exponent(j);
    const std::uint64_t m = e > 0 ? upow(ell, static_cast<unsigned>(e)) : 1;
    const std::string cls = " for 24n == 1 (mod " + std::to_string(a) + ")";
    auto alt = progression_claim("gamma_alt", 2 * a, 2 * b, m, "Theorem 1", "gamma_Alt(2n) == 0 (mod " + std::to_string(m) + ")" + cls);
    auto sym = progression_claim("gamma_sym", a, b, m, "Theorem 1", "gamma_Sym(n) == 0 (mod " + std::to_string(m) + ")" + cls);
    const auto k_max = last_counter(a, b, n_max);
    if (e <= 0) {
        const std::string why = "exponent floor(j/2 - 1) <= 0, modulus 1";
        return {trivial(alt, k_max, why), trivial(sym, k_max, why)};
    }
    Cache local;
    const auto tables = load_growth_tables(cache_or_local(cache, local), Ring::modular(odd_modulus_for(m)),
                                           2 * (a * std::max<std::int64_t>(k_max, 0) + b) + 1);
    return {verify_claim(alt, tables, 0, k_max), verify_claim(sym, tables, 0, k_max)};
}

std::vector<VerificationReport> verify_example_block(bool include_long, Cache* cache)
{
    struct Row {
        std::uint64_t ell;
        unsigned j;
        std::int64_t k_max;
    };
    const Row rows[] = {{5, 4, 200}, {5, 6, 30}, {5, 8, 3}, {7, 4, 200}, {7, 6, 8}};
    // One table mod 5^3 7^2 serves every default row.
    const std::uint64_t shared = 125 * 49;
    std::int64_t top = 0;
    for (const auto& r : rows) {
        const auto a = static_cast<std::int64_t>(upow(r.ell, r.j));
        top = std::max(top, 2 * (a * r.k_max + residues_cong1(r.ell, r.j)));
    }
    Cache local;
    Cache& c = cache_or_local(cache, local);
    std::vector<VerificationReport> out;
    {
        const auto tables = load_growth_tables(c, Ring::modular(shared), top + 1);
        for (const auto& r : rows) {
            const auto a = static_cast<std::int64_t>(upow(r.ell, r.j));
            const auto b = residues_cong1(r.ell, r.j);
            const std::uint64_t m = upow(r.ell, static_cast<unsigned>(growth_exponent(r.j)));
            auto claim = progression_claim("gamma_alt", 2 * a, 2 * b, m, "Theorem 1",
                                           "gamma_Alt(2*" + std::to_string(r.ell) + "^" + std::to_string(r.j) + "n+" +
                                               std::to_string(2 * b) + ") == 0 (mod " + std::to_string(m) + ")");
            out.push_back(verify_claim(claim, tables, 0, r.k_max));
        }
    }
    if (include_long) {
        const auto b = residues_cong1(7, 8);
        const auto a = static_cast<std::int64_t>(upow(7, 8));
        auto claim = progression_claim("gamma_alt", 2 * a, 2 * b, 343, "Theorem 1",
                                       "gamma_Alt(2*7^8n+" + std::to_string(2 * b) + ") == 0 (mod 343)");
        const auto tables = load_growth_tables(c, Ring::modular(343), 2 * b + 1);
        out.push_back(verify_claim(claim, tables, 0, 0));
    }
    return out;
}

namespace {

std::vector<VerificationReport> examples_11_12(std::int64_t n_max, Cache* cache, std::int64_t scale, const std::string& suffix)
{
    Cache local;
    Cache& c = cache_or_local(cache, local);
    const auto tables = load_growth_tables(c, Ring::modular(35), scale * n_max + 1);
    std::vector<VerificationReport> out;
    const std::string arg = scale == 2 ? "p_2(2n)" : "p_2(n)";
    auto c5 = progression_claim("p_k:2", scale, 0, 5, "Example 1.1" + suffix, arg + " == 0 (mod 5) for n == 2, 3, 4 (mod 5)");
    c5.filter = Filter::residue_in(5, {2, 3, 4});
    auto c7 = progression_claim("p_k:2", scale, 0, 7, "Example 1.2" + suffix, arg + " == 0 (mod 7) for n == 17, 31, 38, 45 (mod 49)");
    c7.filter = Filter::residue_in(49, {17, 31, 38, 45});
    for (auto* claim : {&c5, &c7}) {
        auto rep = verify_claim(*claim, tables, 0, n_max);
        rep.notes.push_back("equivalent by Eq (7) to 2 gamma_Alt(" + std::string(scale == 2 ? "2n" : "n") +
                            ") == gamma_Sym(" + std::string(scale == 2 ? "n" : "n/2") + ") on the same classes");
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace

std::vector<VerificationReport> verify_examples_11_12(std::int64_t n_max, Cache* cache)
{
    return examples_11_12(n_max, cache, 2, "");
}

std::vector<VerificationReport> verify_examples_11_12_argument(std::int64_t n_max, Cache* cache)
{
    auto out = examples_11_12(n_max, cache, 1, " (classes of the argument)");
    for (auto& r : out) r.claim.conjectural = true;
    return out;
}

BetaDelta beta_delta(std::uint64_t ell, std::uint64_t q)
{
    if (std::gcd<std::uint64_t>(q * ell, 24) != 1) throw DomainError("beta/delta need gcd(Q ell, 24) = 1");
    const std::uint64_t x = q * upow(ell, m_ell(ell));
    BetaDelta bd;
    bd.beta = static_cast<std::int64_t>(mulmod(23, invmod(x % 24, 24), 24));
    const Int num = Int(std::to_string(x)) * bd.beta + 1;
    if (mpz_divisible_ui_p(num.get_mpz_t(), 24) == 0) throw Error("Q ell^m beta + 1 is not divisible by 24");
    bd.delta = Int(num / 24).get_si();
    return bd;
}

VerificationReport verify_sym(std::uint64_t ell, unsigned j, std::uint64_t q, std::int64_t n_max, const GrowthTables& tables)
{
    if (!is_prime_u64(q)) throw DomainError("Q must be prime");
    const auto bd = beta_delta(ell, q);
    const auto x = static_cast<std::int64_t>(q * upow(ell, m_ell(ell)));
    const std::uint64_t m = upow(ell, j);
    auto claim = progression_claim("p_k:2", 2 * x, 2 * bd.delta, m, "Theorem 2",
                                   "p_2(2*" + std::to_string(x) + "n+" + std::to_string(2 * bd.delta) + ") == 0 (mod " +
                                       std::to_string(m) + ") for Q=" + std::to_string(q));
    claim.filter = Filter::coprime_affine(24, bd.beta, static_cast<std::int64_t>(q * ell));
    claim.conjectural = true;
    auto rep = verify_claim(claim, tables, 0, n_max, true);
    rep.notes.push_back("by Eq (7) this is 2 gamma_Alt(2*" + std::to_string(x) + "n+" + std::to_string(2 * bd.delta) +
                        ") == gamma_Sym(" + std::to_string(x) + "n+" + std::to_string(bd.delta) + ")");
    rep.notes.push_back("Q is a candidate witness; a pass is qualified by the tested range");
    return rep;
}

VerificationReport verify_sym(std::uint64_t ell, unsigned j, std::uint64_t q, std::int64_t n_max, Cache* cache)
{
    const auto bd = beta_delta(ell, q);
    const auto x = static_cast<std::int64_t>(q * upow(ell, m_ell(ell)));
    const std::int64_t top = 2 * x * n_max + 2 * bd.delta;
    check_estimate(static_cast<std::size_t>(top + 1) * 8 * 4, "verify_sym tables");
    Cache local;
    const auto tables = load_growth_tables(cache_or_local(cache, local), Ring::modular(upow(ell, j)), top + 1);
    return verify_sym(ell, j, q, n_max, tables);
}

std::vector<std::uint64_t> witness_primes(std::uint64_t ell, unsigned j, std::uint64_t q_bound)
{
    const std::uint64_t step = 144 * upow(ell, j);
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = step - 1; q <= q_bound; q += step)
        if (is_prime_u64(q)) out.push_back(q);
    return out;
}

WitnessSearch witness_search(std::uint64_t ell, unsigned j, std::uint64_t q_bound, std::int64_t t,
                             std::int64_t verify_n_max, Cache* cache)
{
    if (t < 1) throw DomainError("witness search needs t >= 1");
    const auto ctx = PipelineContext::make(ell, j);
    const std::uint64_t m = ctx.modulus();
    const Ring ring = Ring::modular(m);
    WitnessSearch out;
    const auto primes = witness_primes(ell, j, q_bound);
    if (primes.empty()) return out;
    const auto q_max = static_cast<std::int64_t>(primes.back());
    out.g_truncation = q_max * t;
    truncation_budget(ctx, out.g_truncation);

    Cache local;
    Cache& c = cache_or_local(cache, local);
    const auto g = c.get_or_build("g:" + std::to_string(ell) + ":" + std::to_string(j), ring, out.g_truncation);

    std::int64_t top = 0;
    for (const auto q : primes) {
        const auto bd = beta_delta(ell, q);
        top = std::max(top, 2 * static_cast<std::int64_t>(q * ctx.step()) * verify_n_max + 2 * bd.delta);
    }
    check_estimate(static_cast<std::size_t>(top + 1) * 8 * 4, "witness re-check tables");
    const auto tables = load_growth_tables(c, ring, top + 1);

    for (const auto q : primes) {
        WitnessCandidate w;
        w.ell = ell;
        w.j = j;
        w.q = q;
        w.bd = beta_delta(ell, q);
        w.chi_q = g_character(ctx, Int(std::to_string(q)));
        const auto qi = static_cast<std::int64_t>(q);
        const auto h = hecke(g.truncated(qi * t), q, ctx.kappa, w.chi_q);
        w.evidence = std::min(t, h.truncation());
        for (std::int64_t n = std::max<std::int64_t>(h.start(), 0); n < w.evidence; ++n) {
            if (h.residue(n) != 0) {
                if (!w.first_nonzero) w.first_nonzero = n;
                ++w.nonzero_count;
            }
        }
        w.prefilter_passed = w.nonzero_count == 0;
        // At n == beta (mod 24) with ell, Q not dividing n, the Hecke coefficient is a(Q ell^m n), which is
        // p_2 at the mapped index 2 Q ell^m k + 2 delta with k = (n - beta) / 24.
        const auto x = qi * static_cast<std::int64_t>(ctx.step());
        for (std::int64_t n = 1; n < w.evidence; ++n) {
            if ((n - w.bd.beta) % 24 != 0 || n < w.bd.beta) continue;
            if (std::gcd(n, qi * static_cast<std::int64_t>(ell)) != 1) continue;
            const std::int64_t k = (n - w.bd.beta) / 24;
            const std::int64_t index = 2 * x * k + 2 * w.bd.delta;
            if (index >= tables.size()) continue;
            if (tables.p2().residue(index) != h.residue(n)) {
                w.consistent = false;
                w.inconsistent_at.push_back(n);
            }
        }
        w.direct = verify_sym(ell, j, q, verify_n_max, tables);
        // A passing prefilter must not be contradicted by the direct check on the overlap.
        if (w.prefilter_passed && w.direct.status == Status::Fail) {
            for (const auto& ce : w.direct.counterexamples)
                if (24 * ce.n + w.bd.beta < w.evidence) {
                    w.consistent = false;
                    w.inconsistent_at.push_back(24 * ce.n + w.bd.beta);
                }
        }
        std::sort(w.inconsistent_at.begin(), w.inconsistent_at.end());
        w.inconsistent_at.erase(std::unique(w.inconsistent_at.begin(), w.inconsistent_at.end()), w.inconsistent_at.end());
        out.consistent = out.consistent && w.consistent;
        (w.prefilter_passed ? out.candidates : out.rejected).push_back(std::move(w));
    }
    return out;
}

std::vector<ScanHit> scan_progressions(const std::string& function, std::uint64_t m, std::int64_t a_bound,
                                       std::int64_t n_max, Cache* cache)
{
    const std::string fn = canonical_function(function);
    if (fn != "p" && fn != "p_k:2" && fn != "gamma_sym" && fn != "gamma_alt")
        throw DomainError("scan supports p, p2, gamma_sym and gamma_alt");
    if (m < 2 || a_bound < 1 || n_max < 0) throw DomainError("scan needs m >= 2, a_bound >= 1, n_max >= 0");
    if (fn == "gamma_alt") odd_modulus_for(m);
    Cache local;
    const auto tables = load_growth_tables(cache_or_local(cache, local), Ring::modular(m), a_bound * n_max + a_bound);
    std::vector<ScanHit> hits;
    for (std::int64_t a = 1; a <= a_bound; ++a)
        for (std::int64_t b = 0; b < a; ++b) {
            bool all = true;
            for (std::int64_t n = 0; n <= n_max && all; ++n) all = function_residue(fn, tables, a * n + b, m) == 0;
            if (!all) continue;
            ScanHit hit;
            hit.claim = progression_claim(fn, a, b, m, "scan", fn + "(" + std::to_string(a) + "n+" + std::to_string(b) +
                                                                   ") == 0 (mod " + std::to_string(m) + ")");
            hit.claim.conjectural = true;
            for (const auto& prev : hits)
                if (a % prev.claim.scale == 0 && b % prev.claim.scale == prev.claim.offset) hit.primitive = false;
            hits.push_back(std::move(hit));
        }
    return hits;
}

} // namespace pcong
