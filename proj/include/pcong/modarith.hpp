#pragma once

#include <cstdint>
#include <numeric>

#include "pcong/error.hpp"

namespace pcong {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    const std::uint64_t t = a + b; // a, b < m < 2^63
    return t >= m ? t - m : t;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

// Residue of a signed integer in [0, m).
inline std::uint64_t mod_signed(std::int64_t a, std::uint64_t m)
{
    const auto r = static_cast<std::int64_t>(static_cast<__int128>(a) % static_cast<__int128>(m));
    return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(r);
}

// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    __int128 t = 0, nt = 1;
    __int128 r = m, nr = a % m;
    while (nr != 0) {
        const __int128 q = r / nr;
        const __int128 tt = t - q * nt;
        t = nt;
        nt = tt;
        const __int128 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    if (r != 1) throw DomainError("invmod: " + std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

// Exact integer power; the caller guarantees no overflow.
constexpr std::int64_t ipow(std::int64_t base, unsigned e)
{
    std::int64_t r = 1;
    while (e-- != 0) r *= base;
    return r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return -floor_div(-a, b);
}

inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace pcong
