#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pcong/error.hpp"
#include "pcong/eta.hpp"
#include "pcong/operators.hpp"

using namespace pcong;

namespace {
const Ring ZZ = Ring::integers();

QSeries random_series(std::mt19937_64& rng, const Ring& r, std::int64_t start, std::int64_t len)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(len));
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 21) - 10;
    return QSeries::from_values(r, 1, start, v);
}
} // namespace

TEST_CASE("U operator")
{
    const auto geo = QSeries::from_values(ZZ, 1, 0, std::vector<std::int64_t>(30, 1));
    const auto u3 = u_op(geo, 3);
    CHECK(u3.truncation() == 10);
    for (int n = 0; n < 10; ++n) CHECK(u3.coeff(n) == 1);

    std::mt19937_64 rng(1);
    const auto a = random_series(rng, ZZ, -7, 120);
    CHECK(u_op(u_op(a, 2), 3) == u_op(a, 6));
    CHECK(u_op(a, 4).start() == -1);

    const auto f = expand(EtaQuotient(12, {{12, -2}}), 200, ZZ);
    const auto uf = u_op(f, 12);
    for (std::int64_t n = uf.start(); n < uf.truncation(); ++n) CHECK(uf.coeff(n) == 0);
    const auto u25 = u_op(f, 25);
    for (std::int64_t n = u25.start(); n < u25.truncation(); ++n) CHECK(u25.coeff(n) == f.coeff(25 * n));
}

TEST_CASE("V operator")
{
    const auto v = v_op(QSeries::from_values(ZZ, 1, 0, {1, 1}), 2);
    CHECK(v.truncation() == 4);
    CHECK(v.coeff(0) == 1);
    CHECK(v.coeff(1) == 0);
    CHECK(v.coeff(2) == 1);
    CHECK(v.coeff(3) == 0);

    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
        const std::int64_t d = 1 + t % 12;
        const auto a = random_series(rng, ZZ, -3 + t % 5, 60);
        CHECK(u_op(v_op(a, d), d) == a);
        const auto b = random_series(rng, ZZ, 0, 30);
        // U(d)(a * V(d) b) = U(d)(a) * b
        const auto lhs = u_op(mul(a, v_op(b, d)), d);
        const auto rhs = mul(u_op(a, d), b);
        CHECK(is_congruent(lhs, rhs, 1000003).congruent);
    }

    // Second term of the f_m construction: V(5)(U(25) f) picks a(25 n) at exponents 5 n.
    const auto f = expand(EtaQuotient(12, {{12, -2}}), 600, ZZ);
    const auto second = v_op(u_op(f, 25), 5);
    for (std::int64_t n = 0; n < 24; ++n) CHECK(second.coeff(5 * n) == f.coeff(25 * n));
}

TEST_CASE("Hecke operator")
{
    std::mt19937_64 rng(3);
    const Ring r = Ring::modular(125);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_series(rng, r, -1, 300);
        const std::uint64_t p = t % 2 ? 7 : 11;
        const std::int64_t k = 1 + t % 5;
        const int chi = t % 3 - 1;
        const auto h = hecke(a, p, k, chi);
        const auto ref = add(u_op(a, static_cast<std::int64_t>(p)),
                             v_op(a, static_cast<std::int64_t>(p)).scaled(Int(chi) * Int(static_cast<unsigned long>(std::pow(p, k - 1)))));
        CHECK(is_congruent(h, ref, 125).congruent);
        CHECK(h.truncation() == (a.truncation() + static_cast<std::int64_t>(p) - 1) / static_cast<std::int64_t>(p));
        for (std::int64_t n = h.start(); n < h.truncation(); ++n)
            if (n % static_cast<std::int64_t>(p) != 0) CHECK(h.residue(n) == a.residue(static_cast<std::int64_t>(p) * n));
    }
    const auto z = hecke(QSeries::zero(ZZ, 1, 0, 100), 5, 3, 1);
    CHECK(z.nonzero_count() == 0);
    CHECK_THROWS_AS(hecke(random_series(rng, ZZ, 0, 10), 4, 2, 1), DomainError);
    CHECK_THROWS_AS(hecke(random_series(rng, ZZ, 0, 10), 5, 0, 1), DomainError);
}

TEST_CASE("Kronecker symbol")
{
    for (long n = 1; n < 50; ++n) CHECK(kronecker(Int(1), Int(n)) == 1);
    for (long a = -20; a < 20; ++a) CHECK(kronecker(Int(a), Int(1)) == 1);
    const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    for (const long p : primes)
        for (const long q : primes) {
            if (p == q) continue;
            CHECK(kronecker(Int(p), Int(q)) == oracle::legendre_by_squares(p, q));
            const int sign = ((p - 1) / 2 * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
            CHECK(kronecker(Int(p), Int(q)) * kronecker(Int(q), Int(p)) == sign);
        }
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        const Int a(static_cast<long>(rng() % 200) - 100);
        const Int b(static_cast<long>(rng() % 200) - 100);
        const Int n(static_cast<long>(rng() % 300) + 1);
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    }
}
