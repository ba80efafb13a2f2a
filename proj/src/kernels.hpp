#pragma once

// Inner loops shared by series multiplication and division.

#include <cstdint>
#include <span>
#include <vector>

#include "pcong/ring.hpp"

namespace pcong::kernels {

/// One nonzero coefficient of the factor that is iterated term by term.
struct Term {
    std::int64_t offset;
    std::uint64_t residue; // in [0, M)
};

struct IntTerm {
    std::int64_t offset;
    const Int* value;
};

/// out[i] = sum_t residue_t * src[i - offset_t] (mod m) for 0 <= i < out.size().
/// Terms must be sorted by offset. Output blocks are spread over the configured workers.
void mod_product(std::span<const Term> terms, std::span<const std::uint64_t> src,
                 std::span<std::uint64_t> out, std::uint64_t m);

/// Forward substitution: out[n] = lead_inv * (num[n] - sum_t residue_t * out[n - offset_t]) (mod m).
/// Terms have offset >= 1 and are sorted. num may be shorter than out (missing entries are 0).
void mod_divide(std::span<const std::uint64_t> num, std::span<const Term> terms, std::uint64_t lead_inv,
                std::span<std::uint64_t> out, std::uint64_t m);

void int_product(std::span<const IntTerm> terms, std::span<const Int> src, std::span<Int> out);

/// lead is +1 or -1.
void int_divide(std::span<const Int> num, std::span<const IntTerm> terms, int lead, std::span<Int> out);

} // namespace pcong::kernels
