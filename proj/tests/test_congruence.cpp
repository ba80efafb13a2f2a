#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcong/congruence.hpp"
#include "pcong/error.hpp"
#include "pcong/modarith.hpp"
#include "pcong/partitions.hpp"
#include "pcong/parallel.hpp"
#include "pcong/treneer.hpp"

using namespace pcong;

TEST_CASE("residue class 24n == 1")
{
    CHECK(residues_cong1(5, 4) == 599);
    CHECK(2 * residues_cong1(5, 4) == 1198);
    CHECK(2 * residues_cong1(7, 4) == 4602);
    CHECK(residues_cong1(5, 1) == 4);
    CHECK_THROWS_AS(residues_cong1(3, 1), DomainError);
    for (unsigned j = 1; j < 8; ++j) {
        const auto m = ipow(5, j);
        CHECK((24 * residues_cong1(5, j)) % m == 1);
    }
    CHECK(growth_exponent(3) == 0);
    CHECK(growth_exponent(4) == 1);
    CHECK(growth_exponent(8) == 3);
}

TEST_CASE("partition congruences")
{
    const auto r52 = verify_ramanujan(5, 2, 2000);
    CHECK(r52.status == Status::Pass);
    CHECK(r52.claim.scale == 25);
    CHECK(r52.claim.offset == 24);
    CHECK(r52.claim.modulus == 25);
    CHECK(r52.checked == 80);
    const auto r72 = verify_ramanujan(7, 2, 2000);
    CHECK(r72.status == Status::Pass);
    CHECK(r72.claim.modulus == 49);
    CHECK(verify_ramanujan(11, 1, 2000).status == Status::Pass);
    CHECK(verify_ramanujan(7, 3, 50000).claim.modulus == 49);
    CHECK_THROWS_AS(verify_ramanujan(13, 1, 100), DomainError);
}

TEST_CASE("two-colored congruences on 24n == 2")
{
    const auto a = verify_atkin_k2(5, 4, 200000);
    CHECK(a.status == Status::Pass);
    CHECK(a.claim.modulus == 5);
    CHECK(a.checked > 300);
    CHECK(verify_atkin_k2(7, 4, 200000).status == Status::Pass);
    const auto t = verify_atkin_k2(5, 2, 1000);
    CHECK(t.status == Status::TrivialPass);
    CHECK(t.checked == 0);
}

TEST_CASE("growth congruences")
{
    for (const auto& r : verify_cong1(5, 3, 1000)) CHECK(r.status == Status::TrivialPass);
    const auto reps = verify_cong1(5, 4, 125000);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].claim.function == "gamma_alt");
    CHECK(reps[0].claim.scale == 1250);
    CHECK(reps[0].claim.offset == 1198);
    CHECK(reps[0].claim.provenance == "Theorem 1");
    for (const auto& r : reps) {
        CHECK(r.status == Status::Pass);
        CHECK(r.checked == 200);
    }
    CHECK(verify_cong1(7, 4, 100000)[0].status == Status::Pass);
}

TEST_CASE("two-colored congruences at the doubled argument")
{
    const auto lit = verify_examples_11_12(5000);
    REQUIRE(lit.size() == 2);
    const auto p2 = oracle::enumerate_two_colored(4);
    CHECK(p2 % 5 == 0);
    // The literal mod-5 class fails first at n = 8 and the mod-7 class at n = 17.
    REQUIRE_FALSE(lit[0].counterexamples.empty());
    CHECK(lit[0].counterexamples.front().n == 8);
    CHECK(lit[0].counterexamples.front().residue == oracle::enumerate_two_colored(16) % 5);
    REQUIRE_FALSE(lit[1].counterexamples.empty());
    CHECK(lit[1].counterexamples.front().n == 17);
    CHECK(lit[1].counterexamples.front().residue == oracle::enumerate_two_colored(34) % 7);
    CHECK(lit[0].skipped.size() + lit[0].checked == 5001);

    for (const auto& r : verify_examples_11_12_argument(5000)) {
        CHECK(r.status == Status::Pass);
        CHECK(r.claim.conjectural);
    }
}

TEST_CASE("beta and delta")
{
    const auto bd = beta_delta(5, 719);
    CHECK(bd.beta == 1);
    CHECK(bd.delta == 749);
    CHECK_THROWS_AS(beta_delta(5, 3), DomainError);
    std::mt19937_64 rng(7);
    const std::uint64_t ells[] = {5, 7, 11, 13, 29, 31};
    int done = 0;
    while (done < 1000) {
        const std::uint64_t ell = ells[rng() % 6];
        const std::uint64_t q = 5 + rng() % 100000;
        if (!is_prime_u64(q) || q == ell) continue;
        const auto b = beta_delta(ell, q);
        const auto x = static_cast<std::int64_t>(q) * ipow(static_cast<std::int64_t>(ell), m_ell(ell));
        const std::int64_t n = static_cast<std::int64_t>(rng() % 1000);
        CHECK(24 * b.delta == x * b.beta + 1);
        CHECK((x * (24 * n + b.beta) + 1) % 12 == 0);
        CHECK((x * (24 * n + b.beta) + 1) / 12 == 2 * x * n + 2 * b.delta);
        ++done;
    }
}

TEST_CASE("direct check at a witness prime")
{
    const auto r = verify_sym(5, 1, 719, 20);
    CHECK(r.claim.scale == 35950);
    CHECK(r.claim.offset == 1498);
    CHECK(r.checked + r.skipped.size() == 21);
    for (const auto n : r.skipped) CHECK(std::gcd(24 * n + 1, std::int64_t{719 * 5}) > 1);
    CHECK(r.residues.size() == r.checked);
    CHECK(r.claim.conjectural);
    // Independent check of the first index against the integer p_2 table.
    const auto p2 = colored_series(2, 1499, Ring::integers());
    CHECK(r.residues.front().residue == oracle::mod(p2.coeff(1498), 5));
}

TEST_CASE("witness primes and a small search")
{
    CHECK(witness_primes(5, 1, 5000) == std::vector<std::uint64_t>{719, 1439, 2879});
    CHECK(witness_primes(5, 1, 700).empty());
    const auto a = witness_search(5, 1, 1500, 12, 4);
    const auto b = witness_search(5, 1, 1500, 12, 4);
    CHECK(a.consistent);
    CHECK(a.candidates.size() + a.rejected.size() == 2);
    REQUIRE(a.candidates.size() == b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) CHECK(a.candidates[i].q == b.candidates[i].q);
    for (const auto& c : a.candidates) {
        CHECK(c.evidence == 12);
        CHECK(c.direct.status != Status::Fail);
    }
}

TEST_CASE("Hecke prefilter rejects a Q whose coefficients do not vanish")
{
    // For ell = 13 the witness prime 7487 has a(7487 * 13^2) != 0 (mod 13).
    const auto s = witness_search(13, 1, 7500, 2, 0);
    CHECK(s.consistent);
    REQUIRE(s.candidates.size() == 1);
    CHECK(s.candidates[0].q == 1871);
    REQUIRE(s.rejected.size() == 1);
    const auto& r = s.rejected[0];
    CHECK(r.q == 7487);
    CHECK_FALSE(r.prefilter_passed);
    CHECK(r.first_nonzero == 1);
    // The rejecting coefficient sits on the direct check's index set, so the direct check fails too.
    CHECK(r.bd.beta == 1);
    CHECK(r.direct.status == Status::Fail);
}

TEST_CASE("progression scan")
{
    const auto p5 = scan_progressions("p", 5, 10, 200);
    bool found = false;
    for (const auto& h : p5)
        if (h.claim.scale == 5 && h.claim.offset == 4) found = h.primitive;
    CHECK(found);
    for (const auto& h : p5)
        if (h.claim.scale == 10) CHECK_FALSE(h.primitive);

    const auto q5 = scan_progressions("p2", 5, 10, 200);
    std::vector<std::pair<std::int64_t, std::int64_t>> prim;
    for (const auto& h : q5)
        if (h.primitive) prim.emplace_back(h.claim.scale, h.claim.offset);
    CHECK(prim == std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 2}, {5, 3}, {5, 4}});
    for (const auto& h : q5) CHECK_FALSE((h.claim.scale == 10 && h.claim.offset == 6));

    CHECK(scan_progressions("p", 2, 10, 500).empty());
    CHECK_THROWS_AS(scan_progressions("gamma_alt", 4, 3, 10), RingError);
}

TEST_CASE("reports are deterministic across thread counts")
{
    CongruenceClaim claim;
    claim.function = "p_k:2";
    claim.scale = 1;
    claim.offset = 0;
    claim.modulus = 5;
    claim.provenance = "Theorem 1";
    claim.filter = Filter::residue_in(5, {2, 3, 4});
    Cache none;
    const auto tables = load_growth_tables(none, Ring::modular(5), 400001);
    set_thread_count(1);
    const auto one = render({verify_claim(claim, tables, 0, 400000)}, Format::Json);
    set_thread_count(4);
    const auto four = render({verify_claim(claim, tables, 0, 400000)}, Format::Json);
    set_thread_count(1);
    CHECK(one == four);
    CHECK(one.find("\"provenance\": \"Theorem 1\"") != std::string::npos);
    CHECK(render({verify_claim(claim, tables, 0, 100)}, Format::Csv) == render({verify_claim(claim, tables, 0, 100)}, Format::Csv));
}
