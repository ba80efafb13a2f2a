#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcong/cache.hpp"
#include "pcong/growth.hpp"
#include "pcong/report.hpp"

namespace pcong {

/// p and p_2 tables over `ring`, exact below q^n, taken from the cache when it holds them.
GrowthTables load_growth_tables(Cache& cache, const Ring& ring, std::int64_t n);

/// Checks claim.function(A n + B) == 0 (mod claim.modulus) for n_from <= n <= n_to. The table ring
/// modulus must be a multiple of the claim modulus. Filtered-out n are listed as skipped.
VerificationReport verify_claim(const CongruenceClaim& claim, const GrowthTables& tables, std::int64_t n_from,
                                std::int64_t n_to, bool record_residues = false);

/// The n0 in [0, ell^j) with 24 n0 == 1 (mod ell^j).
std::int64_t residues_cong1(std::uint64_t ell, unsigned j);
/// floor(j/2 - 1), the exponent of ell in the growth and k = 2 congruences.
int growth_exponent(unsigned j);

/// p(n) == 0 (mod ell^j, or 7^{floor(j/2)+1} for ell = 7) whenever 24n == 1 (mod ell^j), n <= n_max.
VerificationReport verify_ramanujan(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache = nullptr);
/// p_2(n) == 0 (mod ell^{floor(j/2-1)}) whenever 24n == 2 (mod ell^j), n <= n_max.
VerificationReport verify_atkin_k2(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache = nullptr);
/// gamma_Alt(2n) == gamma_Sym(n) == 0 (mod ell^{floor(j/2-1)}) whenever 24n == 1 (mod ell^j), n <= n_max.
/// Returns the gamma_Alt report followed by the gamma_Sym report.
std::vector<VerificationReport> verify_cong1(std::uint64_t ell, unsigned j, std::int64_t n_max, Cache* cache = nullptr);

/// The worked progressions for ell = 5, 7 and j = 4, 6 (and the ell = 5, j = 8 one). With `include_long`
/// the single ell = 7, j = 8 point is added; it needs tables past 1.1e7.
std::vector<VerificationReport> verify_example_block(bool include_long, Cache* cache = nullptr);

/// p_2(2n) == 0 (mod 5) for n == 2, 3, 4 (mod 5) and (mod 7) for n == 17, 31, 38, 45 (mod 49), n <= n_max,
/// exactly as the examples state them.
std::vector<VerificationReport> verify_examples_11_12(std::int64_t n_max, Cache* cache = nullptr);
/// The same residue classes applied to the argument itself: p_2(n) == 0 on those classes of n.
std::vector<VerificationReport> verify_examples_11_12_argument(std::int64_t n_max, Cache* cache = nullptr);

struct BetaDelta {
    std::int64_t beta = 0;
    std::int64_t delta = 0;
};

/// beta in [0, 24) with Q ell^m beta == 23 (mod 24), and delta = (Q ell^m beta + 1) / 24.
BetaDelta beta_delta(std::uint64_t ell, std::uint64_t q);

/// p_2(2 Q ell^m n + 2 delta) == 0 (mod ell^j) for n <= n_max with gcd(24n + beta, Q ell) = 1.
/// Every checked residue is recorded.
VerificationReport verify_sym(std::uint64_t ell, unsigned j, std::uint64_t q, std::int64_t n_max, Cache* cache = nullptr);
VerificationReport verify_sym(std::uint64_t ell, unsigned j, std::uint64_t q, std::int64_t n_max, const GrowthTables& tables);

struct WitnessCandidate {
    std::uint64_t ell = 0;
    unsigned j = 0;
    std::uint64_t q = 0;
    BetaDelta bd;
    int chi_q = 0;
    /// Coefficients of g | T_Q at exponents below this bound were tested.
    std::int64_t evidence = 0;
    bool prefilter_passed = false;
    std::optional<std::int64_t> first_nonzero;
    std::uint64_t nonzero_count = 0;
    /// Hecke coefficients at n == beta (mod 24), ell not dividing n, agree with the p_2 table.
    bool consistent = true;
    std::vector<std::int64_t> inconsistent_at;
    VerificationReport direct;
};

struct WitnessSearch {
    std::vector<WitnessCandidate> candidates;
    std::vector<WitnessCandidate> rejected;
    std::int64_t g_truncation = 0;
    bool consistent = true;
};

/// Primes Q == -1 (mod 144 ell^j) up to q_bound, in increasing order.
std::vector<std::uint64_t> witness_primes(std::uint64_t ell, unsigned j, std::uint64_t q_bound);

/// Applies T_{Q, kappa, chi} to g over Z/ell^j for each witness prime, keeps the Q whose first t
/// coefficients vanish, and re-checks every Q directly with verify_sym over n <= verify_n_max.
WitnessSearch witness_search(std::uint64_t ell, unsigned j, std::uint64_t q_bound, std::int64_t t,
                             std::int64_t verify_n_max = 20, Cache* cache = nullptr);

struct ScanHit {
    CongruenceClaim claim;
    /// No hit with a proper divisor A' of A covers this class.
    bool primitive = true;
};

/// Every (A, B), 1 <= A <= a_bound, 0 <= B < A, with function(A n + B) == 0 (mod m) for all n <= n_max.
/// `function` is "p", "p2" (or "p_k:2"), "gamma_sym" or "gamma_alt".
std::vector<ScanHit> scan_progressions(const std::string& function, std::uint64_t m, std::int64_t a_bound,
                                       std::int64_t n_max, Cache* cache = nullptr);

} // namespace pcong
