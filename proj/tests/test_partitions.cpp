#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcong/error.hpp"
#include "pcong/partitions.hpp"

using namespace pcong;

namespace {
const Ring ZZ = Ring::integers();
}

TEST_CASE("partition_series matches enumeration")
{
    const auto p = partition_series(61, ZZ);
    const long first[] = {1, 1, 2, 3, 5, 7};
    for (int n = 0; n < 6; ++n) CHECK(p.coeff(n) == first[n]);
    for (int n = 0; n <= 60; ++n) {
        CHECK(p.coeff(n) == oracle::enumerate_partitions(n));
        if (n <= 30) CHECK(brute_force_p(n) == p.coeff(n));
    }
}

TEST_CASE("partition_series against the divisor-sum recurrence")
{
    const auto p = partition_series(1001, ZZ);
    const auto ref = oracle::partitions_by_divisor_sums(1001);
    for (int n = 0; n <= 1000; n += 37) CHECK(p.coeff(n) == ref[static_cast<std::size_t>(n)]);
    CHECK(p.coeff(1000) == ref[1000]);
}

TEST_CASE("colored_series")
{
    const auto p2 = colored_series(2, 41, ZZ);
    const long first[] = {1, 2, 5, 10, 20, 36};
    for (int n = 0; n < 6; ++n) CHECK(p2.coeff(n) == first[n]);
    for (int n = 0; n <= 40; ++n) CHECK(p2.coeff(n) == oracle::enumerate_two_colored(n));
    CHECK(colored_series(1, 50, ZZ) == partition_series(50, ZZ));

    const auto big = colored_series(2, 2001, ZZ);
    const auto p = partition_series(2001, ZZ);
    oracle::Poly pp;
    for (int n = 0; n <= 2000; ++n) pp.push_back(p.coeff(n));
    const auto conv = oracle::convolve(pp, pp, 2001);
    for (int n = 0; n <= 2000; ++n) CHECK(big.coeff(n) == conv[static_cast<std::size_t>(n)]);
}

TEST_CASE("colored routes agree")
{
    for (const auto& ring : {ZZ, Ring::modular(343), Ring::modular(42875)}) {
        for (unsigned k : {1u, 2u, 3u, 5u}) {
            const auto a = colored_series(k, 300, ring, ColoredRoute::RepeatedDivision);
            CHECK(a == colored_series(k, 300, ring, ColoredRoute::PowerOfPartitions));
            CHECK(a == colored_series(k, 300, ring, ColoredRoute::InvertedEulerPower));
        }
    }
    CHECK_THROWS_AS(colored_series(0, 10, ZZ), DomainError);
}

TEST_CASE("brute force oracles")
{
    CHECK(brute_force_p(4) == 5);
    CHECK(brute_force_p(0) == 1);
    CHECK(brute_force_pk(2, 2) == 5);
    CHECK(brute_force_pk(0, 3) == 1);
    for (int n = 0; n <= 25; ++n) CHECK(brute_force_pk(n, 2) == oracle::enumerate_two_colored(n));
    const auto p3 = colored_series(3, 20, ZZ);
    for (int n = 0; n < 20; ++n) CHECK(brute_force_pk(n, 3) == p3.coeff(n));
}

TEST_CASE("classical Ramanujan congruences")
{
    const auto p = partition_series(11 * 2000 + 7, ZZ);
    for (std::int64_t n = 0; n <= 2000; ++n) {
        CHECK(oracle::mod(p.coeff(5 * n + 4), 5) == 0);
        CHECK(oracle::mod(p.coeff(7 * n + 5), 7) == 0);
        CHECK(oracle::mod(p.coeff(11 * n + 6), 11) == 0);
    }
}

TEST_CASE("modular tables are reductions of the integer table")
{
    const auto p = partition_series(500, ZZ);
    const auto p5 = partition_series(500, Ring::modular(125));
    CHECK(is_congruent(reduce_mod(p, 125), p5, 125).congruent);
    const PartitionTable t = PartitionTable::colored(2, 100, Ring::modular(7));
    CHECK(t.kind() == PartitionTable::Kind::Colored);
    CHECK(t.residue(0) == 1);
    CHECK(t.size() == 100);
}

TEST_CASE("asymptotic ratio")
{
    const double r100 = asymptotic_ratio(100);
    CHECK(std::isfinite(r100));
    CHECK(r100 > 0);
    double prev = 0;
    for (const std::int64_t n : {500, 1000, 2000, 5000}) {
        const double r = asymptotic_ratio(n);
        CHECK(r > prev);
        CHECK(r < 1);
        prev = r;
    }
    CHECK(std::abs(prev - 1) < 0.1);
    // Independent evaluation from the divisor-sum table.
    const auto ref = oracle::partitions_by_divisor_sums(5001)[5000];
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, ref.get_mpz_t());
    const double log_ratio = std::log(mant) + static_cast<double>(e) * std::log(2.0) + std::log(4 * 5000 * std::sqrt(3.0)) -
                             M_PI * std::sqrt(2 * 5000 / 3.0);
    CHECK(prev == doctest::Approx(std::exp(log_ratio)).epsilon(1e-9));
}
