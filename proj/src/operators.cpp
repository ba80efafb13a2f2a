#include "pcong/operators.hpp"

#include "pcong/error.hpp"
#include "pcong/modarith.hpp"

namespace pcong {

namespace {

void require_grain_one(const QSeries& a, const char* op)
{
    if (a.grain() != 1) throw DomainError(std::string(op) + " needs a series on grain 1");
}

} // namespace

QSeries u_op(const QSeries& a, std::int64_t d)
{
    require_grain_one(a, "U");
    if (d < 1) throw DomainError("U(d) needs d >= 1");
    return extract_progression(a, d, 0);
}

QSeries v_op(const QSeries& a, std::int64_t d)
{
    require_grain_one(a, "V");
    if (d < 1) throw DomainError("V(d) needs d >= 1");
    if (d == 1) return a;
    // Spreading on grain d and reading the lattice as grain 1 is exactly q -> q^d.
    const auto spread = a.lifted(static_cast<std::uint32_t>(d));
    if (spread.is_modular())
        return QSeries(spread.ring(), 1, spread.start(), spread.truncation(), spread.residues());
    return QSeries(spread.ring(), 1, spread.start(), spread.truncation(), spread.integers());
}

QSeries hecke(const QSeries& a, std::uint64_t p, std::int64_t k, int chi_p)
{
    if (!is_prime_u64(p)) throw DomainError("Hecke operator needs a prime index");
    if (chi_p < -1 || chi_p > 1) throw DomainError("character value must be -1, 0 or 1");
    const auto pp = static_cast<std::int64_t>(p);
    const auto head = u_op(a, pp);
    if (chi_p == 0) return head;
    const Ring& ring = a.ring();
    Int factor;
    if (ring.is_modular()) {
        const std::uint64_t m = ring.modulus();
        const std::uint64_t base = k >= 1 ? p % m : invmod(p % m, m);
        const auto e = static_cast<std::uint64_t>(k >= 1 ? k - 1 : 1 - k);
        factor = Int(std::to_string(powmod(base, e, m)));
    } else {
        if (k < 1) throw DomainError("Hecke operator over the integers needs weight k >= 1");
        mpz_ui_pow_ui(factor.get_mpz_t(), p, static_cast<unsigned long>(k - 1));
    }
    if (chi_p < 0) factor = -factor;
    // Only a(n/p) with n below the head's truncation is needed.
    const std::int64_t keep = std::max(a.start(), std::min(a.truncation(), ceil_div(head.truncation(), pp)));
    const auto tail = v_op(a.truncated(keep), pp).scaled(factor);
    return add(head, tail).truncated(head.truncation());
}

int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

} // namespace pcong
