#pragma once

#include <cstdint>

#include "pcong/partitions.hpp"
#include "pcong/report.hpp"

namespace pcong {

/// gamma_Sym(n) = p(n) and gamma_Alt(n) = (p(n/2) + p_2(n)) / 2, with p(n/2) = 0 for odd n.
class GrowthTables {
public:
    /// Both tables must share ring and length.
    GrowthTables(PartitionTable plain, PartitionTable two_colored);
    static GrowthTables build(std::int64_t n, const Ring& ring);

    std::int64_t size() const noexcept { return p_.size(); }
    const Ring& ring() const noexcept { return p_.ring(); }
    const PartitionTable& p() const noexcept { return p_; }
    const PartitionTable& p2() const noexcept { return p2_; }

    Int gamma_sym(std::int64_t n) const;
    /// Over the integers an odd numerator throws Error; over Z/M, M must be odd.
    Int gamma_alt(std::int64_t n) const;
    std::uint64_t gamma_alt_residue(std::int64_t n) const;

private:
    void require_index(std::int64_t n) const;

    PartitionTable p_;
    PartitionTable p2_;
    std::uint64_t half_ = 0;
};

/// sum_{n<N} gamma_Alt(n) q^n from the expansions of 1/eta(2z) and 1/eta(z)^2.
QSeries gamma_alt_series_from_eta(std::int64_t n, const Ring& ring);

/// 2 gamma_Alt(2n) = gamma_Sym(n) + p_2(2n) over the integers for 0 <= n < N, with gamma_Alt
/// taken from the eta expansion and the right side from the partition tables.
VerificationReport check_eq7(std::int64_t n);

} // namespace pcong
