#pragma once

#include <cstdint>

#include "pcong/qseries.hpp"

namespace pcong {

/// prod_{n>=1} (1 - q^n) below q^N, written down directly from the pentagonal number theorem.
QSeries euler_series(const Ring& ring, std::int64_t n);

/// prod_{n>=1} (1 - q^n)^3 below q^N, from Jacobi's identity sum (-1)^k (2k+1) q^{k(k+1)/2}.
QSeries euler_cube_series(const Ring& ring, std::int64_t n);

/// sum_{n<N} p(n) q^n, by forward substitution against the sparse Euler product.
QSeries partition_series(std::int64_t n, const Ring& ring);

enum class ColoredRoute {
    /// k successive sparse divisions of 1 by the Euler product.
    RepeatedDivision,
    /// pow(partition_series, k).
    PowerOfPartitions,
    /// invert(pow(euler_series, k)).
    InvertedEulerPower,
};

/// sum_{n<N} p_k(n) q^n where sum p_k(n) q^n = prod (1 - q^n)^{-k}.
QSeries colored_series(unsigned k, std::int64_t n, const Ring& ring,
                       ColoredRoute route = ColoredRoute::RepeatedDivision);

/// Counts partitions of n by generating each one. Intended for n <= 60.
Int brute_force_p(int n);
/// Counts k-colored partitions of n by generating each multiset of colored parts. Intended for n <= 60.
Int brute_force_pk(int n, unsigned k);

/// p(n) * 4 n sqrt(3) / exp(pi sqrt(2n/3)), evaluated in log space.
double asymptotic_ratio(std::int64_t n);

/// Immutable table v[0..N) of p(n) or p_k(n) over a ring.
class PartitionTable {
public:
    enum class Kind { Plain, Colored };

    static PartitionTable plain(std::int64_t n, const Ring& ring);
    static PartitionTable colored(unsigned k, std::int64_t n, const Ring& ring);
    /// Wraps an existing series with start 0, grain 1 and constant term 1.
    PartitionTable(Kind kind, unsigned colors, QSeries values);

    Kind kind() const noexcept { return kind_; }
    unsigned colors() const noexcept { return colors_; }
    const Ring& ring() const noexcept { return values_.ring(); }
    std::int64_t size() const noexcept { return values_.truncation(); }
    Int operator[](std::int64_t n) const { return values_.coeff(n); }
    std::uint64_t residue(std::int64_t n) const { return values_.residue(n); }
    const QSeries& series() const noexcept { return values_; }

private:
    Kind kind_;
    unsigned colors_;
    QSeries values_;
};

} // namespace pcong
