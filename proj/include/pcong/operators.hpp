#pragma once

#include <cstdint>

#include "pcong/qseries.hpp"

namespace pcong {

/// sum a(dn) q^n. Grain 1 only; truncation ceil(T/d).
QSeries u_op(const QSeries& a, std::int64_t d);

/// sum a(n) q^{dn}. Grain 1 only; truncation d T.
QSeries v_op(const QSeries& a, std::int64_t d);

/// sum (a(pn) + chi_p p^{k-1} a(n/p)) q^n, with chi_p = chi(p) in {-1, 0, 1}.
/// Over the integers k must be at least 1; over Z/M with k < 1, p must be invertible.
QSeries hecke(const QSeries& a, std::uint64_t p, std::int64_t k, int chi_p);

/// Kronecker symbol (a/n).
int kronecker(const Int& a, const Int& n);

} // namespace pcong
