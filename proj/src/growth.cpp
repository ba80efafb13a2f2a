#include "pcong/growth.hpp"

#include "pcong/error.hpp"
#include "pcong/eta.hpp"
#include "pcong/modarith.hpp"

namespace pcong {

GrowthTables::GrowthTables(PartitionTable plain, PartitionTable two_colored)
    : p_(std::move(plain)), p2_(std::move(two_colored))
{
    if (p_.colors() != 1 || p2_.colors() != 2) throw DomainError("growth tables need p and p_2");
    if (!(p_.ring() == p2_.ring()) || p_.size() != p2_.size()) throw DomainError("p and p_2 tables disagree in ring or length");
    if (ring().is_modular() && ring().modulus() % 2 == 1) half_ = (ring().modulus() + 1) / 2;
}

GrowthTables GrowthTables::build(std::int64_t n, const Ring& ring)
{
    auto p = PartitionTable::plain(n, ring);
    auto p2 = PartitionTable(PartitionTable::Kind::Colored, 2, divide(p.series(), euler_series(ring, n)));
    return GrowthTables(std::move(p), std::move(p2));
}

void GrowthTables::require_index(std::int64_t n) const
{
    if (n < 0 || n >= size())
        throw TruncationError("growth index " + std::to_string(n) + " outside table of length " + std::to_string(size()));
}

Int GrowthTables::gamma_sym(std::int64_t n) const
{
    require_index(n);
    return p_[n];
}

Int GrowthTables::gamma_alt(std::int64_t n) const
{
    require_index(n);
    if (ring().is_modular()) return Int(std::to_string(gamma_alt_residue(n)));
    Int sum = p2_[n];
    if (n % 2 == 0) sum += p_[n / 2];
    if (mpz_odd_p(sum.get_mpz_t())) throw Error("gamma_Alt(" + std::to_string(n) + ") has an odd numerator");
    return sum / 2;
}

std::uint64_t GrowthTables::gamma_alt_residue(std::int64_t n) const
{
    require_index(n);
    if (!ring().is_modular()) return 0;
    if (half_ == 0) throw RingError("gamma_Alt needs an odd modulus");
    const std::uint64_t m = ring().modulus();
    std::uint64_t sum = p2_.residue(n);
    if (n % 2 == 0) sum = addmod(sum, p_.residue(n / 2), m);
    return mulmod(sum, half_, m);
}

QSeries gamma_alt_series_from_eta(std::int64_t n, const Ring& ring)
{
    if (ring.is_modular() && ring.modulus() % 2 == 0) throw RingError("gamma_Alt needs an odd modulus");
    // Both quotients lead with q^{-1/12}; the shift by 2/24 moves the sum onto exponent 0.
    const auto alt = expand(EtaQuotient(2, {{2, -1}}), n, ring);
    const auto two = expand(EtaQuotient(1, {{1, -2}}), n, ring);
    const auto sum = add(alt, two).lifted(24).shifted(2).normalized();
    if (ring.is_modular()) return sum.scaled(Int(std::to_string((ring.modulus() + 1) / 2)));
    QSeries::Integers halves(sum.integers());
    for (std::size_t i = 0; i < halves.size(); ++i) {
        if (mpz_odd_p(halves[i].get_mpz_t()))
            throw Error("gamma_Alt(" + std::to_string(sum.start() + static_cast<std::int64_t>(i)) + ") has an odd numerator");
        mpz_divexact_ui(halves[i].get_mpz_t(), halves[i].get_mpz_t(), 2);
    }
    return QSeries(ring, sum.grain(), sum.start(), sum.truncation(), std::move(halves));
}

VerificationReport check_eq7(std::int64_t n)
{
    if (n < 1) throw DomainError("check_eq7 needs N >= 1");
    VerificationReport rep;
    rep.claim.function = "identity";
    rep.claim.scale = 2;
    rep.claim.offset = 0;
    rep.claim.modulus = 0;
    rep.claim.provenance = "Eq (7)";
    rep.claim.statement = "2 gamma_Alt(2n) = gamma_Sym(n) + p_2(2n)";
    rep.n_from = 0;
    rep.n_to = n - 1;
    const auto tables = GrowthTables::build(2 * n, Ring::integers());
    const auto alt = gamma_alt_series_from_eta(2 * n, Ring::integers());
    rep.truncation = 2 * n;
    for (std::int64_t k = 0; k < n; ++k) {
        const Int lhs = 2 * alt.coeff(2 * k);
        const Int rhs = tables.gamma_sym(k) + tables.p2()[2 * k];
        ++rep.checked;
        if (lhs != rhs) {
            const Int diff = lhs - rhs;
            rep.counterexamples.push_back({k, 2 * k, static_cast<std::uint64_t>(mpz_fdiv_ui(diff.get_mpz_t(), 1000000007))});
        }
    }
    if (!rep.counterexamples.empty()) rep.notes.push_back("residue column holds (lhs - rhs) mod 1000000007");
    rep.finalize();
    return rep;
}

} // namespace pcong
