#include "kernels.hpp"

#include <algorithm>
#include <limits>

#include "pcong/modarith.hpp"
#include "pcong/parallel.hpp"

namespace pcong::kernels {

namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::int64_t kI64Max = std::numeric_limits<std::int64_t>::max();

// Signed representatives of the term residues plus the number of products that can be
// accumulated in an int64 before the accumulator has to be reduced again.
struct Plan {
    std::vector<std::int64_t> coef;
    std::size_t chunk = 0;
    bool wide = false;   // int64 accumulation impossible; use 128-bit mulmod per product
    bool narrow = false; // residues and coefficients fit int32: widening multiplies
};

Plan make_plan(std::span<const Term> terms, std::uint64_t m)
{
    Plan plan;
    plan.coef.reserve(terms.size());
    std::uint64_t cmax = 0;
    for (const Term& t : terms) {
        const auto c = t.residue <= m / 2 ? static_cast<std::int64_t>(t.residue)
                                          : static_cast<std::int64_t>(t.residue) - static_cast<std::int64_t>(m);
        plan.coef.push_back(c);
        cmax = std::max<std::uint64_t>(cmax, static_cast<std::uint64_t>(c < 0 ? -c : c));
    }
    const unsigned __int128 per = static_cast<unsigned __int128>(std::max<std::uint64_t>(cmax, 1)) * (m - 1);
    const auto room = static_cast<unsigned __int128>(kI64Max - static_cast<std::int64_t>(m));
    if (m < 2 || per == 0 || per > room) {
        plan.wide = per > room;
        plan.chunk = per == 0 ? std::numeric_limits<std::size_t>::max() : 1;
    } else {
        const unsigned __int128 k = room / per;
        plan.chunk = k > std::numeric_limits<std::size_t>::max() ? std::numeric_limits<std::size_t>::max()
                                                                  : static_cast<std::size_t>(k);
    }
    plan.narrow = m < (std::uint64_t{1} << 31) && cmax < (std::uint64_t{1} << 31);
    return plan;
}

template <bool Narrow>
inline void axpy(std::int64_t* __restrict acc, const std::uint64_t* __restrict src, std::size_t n, std::int64_t c)
{
    if (c == 1) {
        for (std::size_t k = 0; k < n; ++k) acc[k] += static_cast<std::int64_t>(src[k]);
    } else if (c == -1) {
        for (std::size_t k = 0; k < n; ++k) acc[k] -= static_cast<std::int64_t>(src[k]);
    } else if constexpr (Narrow) {
        const auto c32 = static_cast<std::int32_t>(c);
        for (std::size_t k = 0; k < n; ++k)
            acc[k] += static_cast<std::int64_t>(c32) * static_cast<std::int64_t>(static_cast<std::int32_t>(src[k]));
    } else {
        for (std::size_t k = 0; k < n; ++k) acc[k] += c * static_cast<std::int64_t>(src[k]);
    }
}

inline void reduce_block(std::int64_t* acc, std::size_t n, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    for (std::size_t k = 0; k < n; ++k) acc[k] %= sm;
}

inline std::uint64_t finish(std::int64_t v, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    v %= sm;
    return static_cast<std::uint64_t>(v < 0 ? v + sm : v);
}

// Adds sign * c_t * src[i - off_t] into acc for output indices [o, o + blen), for terms
// [first, last). src indices outside [0, src.size()) contribute nothing.
template <bool Narrow>
void accumulate_block(std::int64_t* acc, std::size_t o, std::size_t blen, std::span<const Term> terms,
                      const Plan& plan, std::size_t first, std::size_t last, std::span<const std::uint64_t> src,
                      std::int64_t sign, std::uint64_t m)
{
    std::size_t pending = 0;
    const auto hi_out = static_cast<std::int64_t>(o + blen);
    for (std::size_t t = first; t < last; ++t) {
        const std::int64_t off = terms[t].offset;
        if (off >= hi_out) break;
        const std::int64_t lo = std::max<std::int64_t>(static_cast<std::int64_t>(o), off);
        const std::int64_t hi = std::min<std::int64_t>(hi_out, off + static_cast<std::int64_t>(src.size()));
        if (lo >= hi) continue;
        axpy<Narrow>(acc + (lo - static_cast<std::int64_t>(o)), src.data() + (lo - off),
                     static_cast<std::size_t>(hi - lo), sign * plan.coef[t]);
        if (++pending == plan.chunk) {
            reduce_block(acc, blen, m);
            pending = 0;
        }
    }
}

void accumulate_block_wide(std::uint64_t* acc, std::size_t o, std::size_t blen, std::span<const Term> terms,
                           std::size_t first, std::size_t last, std::span<const std::uint64_t> src, bool subtract,
                           std::uint64_t m)
{
    const auto hi_out = static_cast<std::int64_t>(o + blen);
    for (std::size_t t = first; t < last; ++t) {
        const std::int64_t off = terms[t].offset;
        if (off >= hi_out) break;
        const std::int64_t lo = std::max<std::int64_t>(static_cast<std::int64_t>(o), off);
        const std::int64_t hi = std::min<std::int64_t>(hi_out, off + static_cast<std::int64_t>(src.size()));
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::uint64_t p = mulmod(terms[t].residue, src[static_cast<std::size_t>(i - off)], m);
            std::uint64_t& a = acc[static_cast<std::size_t>(i) - o];
            a = subtract ? submod(a, p, m) : addmod(a, p, m);
        }
    }
}

} // namespace

void mod_product(std::span<const Term> terms, std::span<const std::uint64_t> src, std::span<std::uint64_t> out,
                 std::uint64_t m)
{
    const std::size_t len = out.size();
    if (len == 0) return;
    const Plan plan = make_plan(terms, m);
    const std::size_t nblocks = (len + kBlock - 1) / kBlock;
    const double work = static_cast<double>(terms.size()) * static_cast<double>(len);
    const unsigned workers = work > 4.0e6 ? thread_count() : 1;

    parallel_ranges(nblocks, 1, workers, [&](std::size_t b0, std::size_t b1) {
        std::vector<std::int64_t> acc(kBlock);
        std::vector<std::uint64_t> wacc(plan.wide ? kBlock : 0);
        for (std::size_t b = b0; b < b1; ++b) {
            const std::size_t o = b * kBlock;
            const std::size_t blen = std::min(kBlock, len - o);
            if (plan.wide) {
                std::fill_n(wacc.begin(), blen, 0);
                accumulate_block_wide(wacc.data(), o, blen, terms, 0, terms.size(), src, false, m);
                std::copy_n(wacc.begin(), blen, out.begin() + static_cast<std::ptrdiff_t>(o));
                continue;
            }
            std::fill_n(acc.begin(), blen, 0);
            if (plan.narrow)
                accumulate_block<true>(acc.data(), o, blen, terms, plan, 0, terms.size(), src, 1, m);
            else
                accumulate_block<false>(acc.data(), o, blen, terms, plan, 0, terms.size(), src, 1, m);
            for (std::size_t k = 0; k < blen; ++k) out[o + k] = finish(acc[k], m);
        }
    });
}

namespace {

template <bool Narrow>
void mod_divide_impl(std::span<const std::uint64_t> num, std::span<const Term> terms, const Plan& plan,
                     std::uint64_t lead_inv, std::span<std::uint64_t> out, std::uint64_t m)
{
    const std::size_t len = out.size();
    const auto near_end = static_cast<std::size_t>(
        std::lower_bound(terms.begin(), terms.end(), static_cast<std::int64_t>(kBlock),
                         [](const Term& t, std::int64_t v) { return t.offset < v; }) -
        terms.begin());
    const auto sm = static_cast<std::int64_t>(m);
    std::vector<std::int64_t> acc(kBlock);

    for (std::size_t o = 0; o < len; o += kBlock) {
        const std::size_t blen = std::min(kBlock, len - o);
        for (std::size_t k = 0; k < blen; ++k)
            acc[k] = o + k < num.size() ? static_cast<std::int64_t>(num[o + k]) : 0;
        // Far terms only reach back into finished blocks.
        accumulate_block<Narrow>(acc.data(), o, blen, terms, plan, near_end, terms.size(),
                                 std::span<const std::uint64_t>(out.data(), o), -1, m);
        reduce_block(acc.data(), blen, m);
        for (std::size_t k = 0; k < blen; ++k) {
            const std::size_t n = o + k;
            std::int64_t s = acc[k];
            std::size_t pending = 0;
            for (std::size_t t = 0; t < near_end; ++t) {
                const auto off = static_cast<std::size_t>(terms[t].offset);
                if (off > n) break;
                if constexpr (Narrow) {
                    s -= static_cast<std::int64_t>(static_cast<std::int32_t>(plan.coef[t])) *
                         static_cast<std::int64_t>(static_cast<std::int32_t>(out[n - off]));
                } else {
                    s -= plan.coef[t] * static_cast<std::int64_t>(out[n - off]);
                }
                if (++pending == plan.chunk) {
                    s %= sm;
                    pending = 0;
                }
            }
            const std::uint64_t r = finish(s, m);
            out[n] = lead_inv == 1 ? r : mulmod(r, lead_inv, m);
        }
    }
}

void mod_divide_wide(std::span<const std::uint64_t> num, std::span<const Term> terms, std::uint64_t lead_inv,
                     std::span<std::uint64_t> out, std::uint64_t m)
{
    for (std::size_t n = 0; n < out.size(); ++n) {
        std::uint64_t s = n < num.size() ? num[n] : 0;
        for (const Term& t : terms) {
            const auto off = static_cast<std::size_t>(t.offset);
            if (off > n) break;
            s = submod(s, mulmod(t.residue, out[n - off], m), m);
        }
        out[n] = mulmod(s, lead_inv, m);
    }
}

} // namespace

void mod_divide(std::span<const std::uint64_t> num, std::span<const Term> terms, std::uint64_t lead_inv,
                std::span<std::uint64_t> out, std::uint64_t m)
{
    const Plan plan = make_plan(terms, m);
    if (plan.wide)
        mod_divide_wide(num, terms, lead_inv, out, m);
    else if (plan.narrow)
        mod_divide_impl<true>(num, terms, plan, lead_inv, out, m);
    else
        mod_divide_impl<false>(num, terms, plan, lead_inv, out, m);
}

void int_product(std::span<const IntTerm> terms, std::span<const Int> src, std::span<Int> out)
{
    const std::size_t len = out.size();
    const double work = static_cast<double>(terms.size()) * static_cast<double>(len);
    const unsigned workers = work > 1.0e5 ? thread_count() : 1;
    parallel_ranges(len, 64, workers, [&](std::size_t lo, std::size_t hi) {
        for (const IntTerm& t : terms) {
            const auto off = static_cast<std::size_t>(t.offset);
            if (off >= hi) break;
            const std::size_t from = std::max(lo, off);
            const std::size_t to = std::min(hi, off + src.size());
            const bool one = *t.value == 1;
            const bool minus_one = *t.value == -1;
            for (std::size_t i = from; i < to; ++i) {
                mpz_ptr dst = out[i].get_mpz_t();
                mpz_srcptr s = src[i - off].get_mpz_t();
                if (one)
                    mpz_add(dst, dst, s);
                else if (minus_one)
                    mpz_sub(dst, dst, s);
                else
                    mpz_addmul(dst, t.value->get_mpz_t(), s);
            }
        }
    });
}

void int_divide(std::span<const Int> num, std::span<const IntTerm> terms, int lead, std::span<Int> out)
{
    Int s;
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (n < num.size())
            s = num[n];
        else
            s = 0;
        for (const IntTerm& t : terms) {
            const auto off = static_cast<std::size_t>(t.offset);
            if (off > n) break;
            mpz_srcptr prev = out[n - off].get_mpz_t();
            if (*t.value == 1)
                mpz_sub(s.get_mpz_t(), s.get_mpz_t(), prev);
            else if (*t.value == -1)
                mpz_add(s.get_mpz_t(), s.get_mpz_t(), prev);
            else
                mpz_submul(s.get_mpz_t(), t.value->get_mpz_t(), prev);
        }
        if (lead < 0) mpz_neg(s.get_mpz_t(), s.get_mpz_t());
        out[n] = s;
    }
}

} // namespace pcong::kernels
