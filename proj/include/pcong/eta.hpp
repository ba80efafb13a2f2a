#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcong/qseries.hpp"

namespace pcong {

using Rational = mpq_class;

/// prod_{delta | N} eta(delta z)^{r_delta}. Zero exponents are dropped on construction.
class EtaQuotient {
public:
    EtaQuotient(std::uint64_t level, std::map<std::uint64_t, std::int64_t> exponents);
    /// Parses "delta:r,delta:r,...", e.g. "1:25,25:-1". An empty string is the empty quotient.
    static EtaQuotient parse(std::uint64_t level, const std::string& text);

    std::uint64_t level() const noexcept { return level_; }
    const std::map<std::uint64_t, std::int64_t>& exponents() const noexcept { return exponents_; }
    /// (1/2) sum r_delta.
    Rational weight() const;
    /// sum delta r_delta: the leading exponent in units of q^{1/24}.
    std::int64_t leading_exponent24() const;
    std::string to_string() const;

private:
    std::uint64_t level_;
    std::map<std::uint64_t, std::int64_t> exponents_;
};

/// The q-expansion of e over `ring`, exact for every exponent below q^T, on the coarsest
/// grain dividing 24 that carries the support.
QSeries expand(const EtaQuotient& e, std::int64_t t, const Ring& ring);

struct Modularity {
    Rational weight;
    /// prod delta^{r_delta}.
    Rational s;
    /// sum delta r_delta == 0 (mod 24)
    bool delta_sum_ok = false;
    /// sum (N/delta) r_delta == 0 (mod 24)
    bool level_sum_ok = false;
    bool integral_weight = false;
    /// (-1)^k times the squarefree part of numerator(s) * denominator(s); set when the weight is integral.
    Int character_top;

    bool holds() const noexcept { return delta_sum_ok && level_sum_ok && integral_weight; }
    /// kronecker(character_top, d).
    int character(const Int& d) const;
};

Modularity modularity_check(const EtaQuotient& e);

/// Representative a/c of a cusp of Gamma_0(N): c | N, gcd(a, c) = 1, a taken mod gcd(c, N/c).
struct Cusp {
    std::int64_t a;
    std::int64_t c;
};

/// One representative per cusp class of Gamma_0(N), ordered by c then a.
std::vector<Cusp> cusps(std::uint64_t level);
/// Width of the cusp with denominator c: N / gcd(c^2, N).
std::uint64_t cusp_width(std::uint64_t level, std::uint64_t c);
/// Order of vanishing at a/c in the local uniformizer q^{1/width}. Throws DomainError if c does not divide N.
Rational cusp_order(const EtaQuotient& e, std::int64_t a, std::int64_t c);

/// Squarefree part of |n| (n / largest square divisor), n != 0.
std::uint64_t squarefree_part(std::uint64_t n);

} // namespace pcong
