#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pcong/ring.hpp"

namespace pcong {

/// A truncated q-expansion  sum_{e=start}^{truncation-1} c(e) q^{e/grain}.
///
/// Coefficients are exact for every lattice exponent e with start <= e < truncation;
/// exponents below `start` are zero and exponents at or above `truncation` are unknown
/// (querying them throws TruncationError). Values are immutable once constructed.
///
/// Storage is dense. When fewer than 5% of the slots are nonzero the series also keeps
/// the ascending list of nonzero offsets, which the multiplication and division kernels
/// iterate instead of the full array.
class QSeries {
public:
    using Residues = std::vector<std::uint64_t>;
    using Integers = std::vector<Int>;

    QSeries(Ring ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation, Residues coeffs);
    QSeries(Ring ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation, Integers coeffs);

    static QSeries zero(const Ring& ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation);
    /// The constant 1 on grain 1, known for exponents < truncation.
    static QSeries one(const Ring& ring, std::int64_t truncation);
    /// Small-integer coefficients, reduced into the ring.
    static QSeries from_values(const Ring& ring, std::uint32_t grain, std::int64_t start,
                               const std::vector<std::int64_t>& values);

    const Ring& ring() const noexcept { return ring_; }
    std::uint32_t grain() const noexcept { return grain_; }
    std::int64_t start() const noexcept { return start_; }
    std::int64_t truncation() const noexcept { return truncation_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(truncation_ - start_); }

    /// Coefficient at lattice exponent e (in units of 1/grain). Residue in [0, M) for modular rings.
    Int coeff(std::int64_t e) const;
    /// Modular rings only.
    std::uint64_t residue(std::int64_t e) const;
    bool is_zero_at(std::int64_t e) const;

    bool is_modular() const noexcept { return ring_.is_modular(); }
    const Residues& residues() const;
    const Integers& integers() const;

    std::size_t nonzero_count() const noexcept { return nonzeros_; }
    bool is_sparse() const noexcept { return sparse_; }
    /// Ascending offsets (e - start) of the nonzero slots; empty unless is_sparse().
    std::span<const std::int64_t> sparse_offsets() const noexcept { return sparse_offsets_; }
    /// First exponent carrying a nonzero coefficient, if any.
    std::optional<std::int64_t> leading_exponent() const;

    QSeries truncated(std::int64_t truncation) const;
    /// Multiplication by the exact monomial q^{shift/grain}.
    QSeries shifted(std::int64_t shift) const;
    QSeries negated() const;
    QSeries scaled(const Int& c) const;
    /// Re-expresses the series on grain g, a multiple of the current grain.
    QSeries lifted(std::uint32_t g) const;
    /// Coarsest grain on which the support is integral.
    QSeries normalized() const;
    /// Drops leading zero slots so that start is the first nonzero exponent (unchanged if all zero).
    QSeries trimmed() const;

    /// Bit-exact representation equality (ring, grain, start, truncation, coefficients).
    friend bool operator==(const QSeries& a, const QSeries& b);

    std::string to_string(std::size_t max_terms = 12) const;

private:
    void finalize();
    std::size_t offset_of(std::int64_t e) const;

    Ring ring_;
    std::uint32_t grain_;
    std::int64_t start_;
    std::int64_t truncation_;
    std::variant<Residues, Integers> coeffs_;
    std::size_t nonzeros_ = 0;
    bool sparse_ = false;
    std::vector<std::int64_t> sparse_offsets_;
};

/// c * q^{e/grain}, known below `truncation`.
QSeries monomial(const Ring& ring, std::uint32_t grain, std::int64_t e, const Int& c, std::int64_t truncation);

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
/// Cauchy product; truncation min(T_a + v_b, T_b + v_a).
QSeries mul(const QSeries& a, const QSeries& b);
/// 1/a. The coefficient at a.start() must be a unit.
QSeries invert(const QSeries& a);
/// a/b, solved by forward substitution. The coefficient at b.start() must be a unit.
QSeries divide(const QSeries& a, const QSeries& b);
/// Square-and-multiply powering; pow(a, 0) = 1.
QSeries pow(const QSeries& a, std::uint64_t e);
/// sum_n a(d n + r) q^n on grain 1, truncation ceil((T - r)/d).
QSeries extract_progression(const QSeries& a, std::int64_t d, std::int64_t r);
/// Coefficients reduced into Z/m. Accepts integer series, or modular ones whose modulus m divides.
QSeries reduce_mod(const QSeries& a, std::uint64_t m);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

struct Congruence {
    bool congruent = true;
    /// Smallest disagreeing exponent, in units of 1/grain.
    std::optional<std::int64_t> first_mismatch;
    std::uint32_t grain = 1;
    /// Exponents below this bound were compared.
    std::int64_t compared_to = 0;
};

/// Compares a and b modulo m on every exponent below min(T_a, T_b).
Congruence is_congruent(const QSeries& a, const QSeries& b, std::uint64_t m);

} // namespace pcong
