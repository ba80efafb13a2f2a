#pragma once

#include <cstdint>

#include "pcong/qseries.hpp"

namespace pcong {

/// Parameters of the congruence pipeline for a prime ell >= 5 and exponent j.
struct PipelineContext {
    std::uint64_t ell = 5;
    unsigned j = 1;
    /// Power of ell in the U-operator: 2 for 5 <= ell <= 23, 1 from 29 on.
    unsigned m = 2;
    /// Exponent of the F-power, at least j - 1.
    unsigned beta = 0;
    /// Weight of g: -1 + ell^beta (ell^2 - 1) / 2.
    std::int64_t kappa = 0;

    static PipelineContext make(std::uint64_t ell, unsigned j);
    /// ell^j.
    std::uint64_t modulus() const;
    /// ell^m.
    std::uint64_t step() const;
};

unsigned m_ell(std::uint64_t ell);
/// Smallest beta >= j - 1 for which ell^beta times the order of F at every cusp a/c of
/// Gamma_0(144 ell^2) with ell^2 not dividing c exceeds the pole bound of f_m there
/// (one unit of q, i.e. the cusp width in local units).
unsigned choose_beta(std::uint64_t ell, unsigned j);
std::int64_t kappa_for(std::uint64_t ell, unsigned beta);

/// Sizes each stage needs before anything is expanded.
struct TruncationBudget {
    std::int64_t output = 0;
    /// Truncation demanded of f so that f_m is exact below q^output.
    std::int64_t f_truncation = 0;
    std::int64_t F_truncation = 0;
    std::size_t bytes = 0;
};

/// Computes the budget for g (or f_m) at truncation t and checks it against the memory budget.
TruncationBudget truncation_budget(const PipelineContext& ctx, std::int64_t t);

/// 1 / eta(12z)^2 = sum_{n >= -1} a(n) q^n, exact below q^T.
QSeries build_f(std::int64_t t, const Ring& ring);
/// f | U(ell^m) - f | U(ell^{m+1}) | V(ell), exact below q^T. Needs f exact below q^{ell^m T}.
QSeries build_fm(const QSeries& f, unsigned m, std::uint64_t ell, std::int64_t t);
QSeries build_fm(unsigned m, std::uint64_t ell, std::int64_t t, const Ring& ring);
/// eta(z)^{ell^2} / eta(ell^2 z), constant term 1.
QSeries build_F(std::uint64_t ell, std::int64_t t, const Ring& ring);
/// f_m * F^{ell^beta} over Z/ell^j, with the F-power collapsed to ell^{min(beta, j-1)}.
QSeries build_g(const PipelineContext& ctx, std::int64_t t);
/// Builds g from an f that is already exact below q^{ell^m T} over a ring whose modulus ell^j divides.
QSeries build_g(const PipelineContext& ctx, const QSeries& f, std::int64_t t);

/// chi(d) for the Nebentypus of g: the character of f times that of F raised to ell^beta.
int g_character(const PipelineContext& ctx, const Int& d);

} // namespace pcong
