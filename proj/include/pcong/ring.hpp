#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace pcong {

using Int = mpz_class;

/// The coefficient ring of a series: the integers, or Z/M with 2 <= M < 2^63.
/// Modular residues are always stored in [0, M).
class Ring {
public:
    enum class Kind : std::uint8_t { Integers = 0, Modular = 1 };

    static Ring integers() { return Ring(Kind::Integers, 0); }
    static Ring modular(std::uint64_t modulus);

    Kind kind() const noexcept { return kind_; }
    bool is_modular() const noexcept { return kind_ == Kind::Modular; }
    /// 0 for the integers.
    std::uint64_t modulus() const noexcept { return modulus_; }

    std::uint64_t reduce(const Int& x) const;
    std::uint64_t reduce(std::int64_t x) const;
    bool is_unit(const Int& x) const;

    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    Ring(Kind k, std::uint64_t m) : kind_(k), modulus_(m) {}

    Kind kind_;
    std::uint64_t modulus_;
};

} // namespace pcong
