#include "pcong/ring.hpp"

#include "pcong/error.hpp"

namespace pcong {

Ring Ring::modular(std::uint64_t modulus)
{
    if (modulus < 2 || modulus >= (std::uint64_t{1} << 63))
        throw RingError("modulus must satisfy 2 <= M < 2^63, got " + std::to_string(modulus));
    return Ring(Kind::Modular, modulus);
}

std::uint64_t Ring::reduce(const Int& x) const
{
    if (!is_modular()) throw RingError("reduce: ring is the integers");
    return mpz_fdiv_ui(x.get_mpz_t(), modulus_);
}

std::uint64_t Ring::reduce(std::int64_t x) const
{
    if (!is_modular()) throw RingError("reduce: ring is the integers");
    const auto m = static_cast<__int128>(modulus_);
    auto r = static_cast<__int128>(x) % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

bool Ring::is_unit(const Int& x) const
{
    if (!is_modular()) return x == 1 || x == -1;
    Int g;
    Int m(std::to_string(modulus_));
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return g == 1;
}

std::string Ring::name() const
{
    return is_modular() ? "Z/" + std::to_string(modulus_) : "Z";
}

} // namespace pcong
