#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcong {

enum class Status { Pass, Fail, TrivialPass, Empty };

std::string to_string(Status s);

/// Restriction on the progression variable n of a claim.
struct Filter {
    enum class Kind { None, ResidueIn, CoprimeAffine };

    Kind kind = Kind::None;
    /// ResidueIn: n mod `modulus` must be one of `residues`.
    std::int64_t modulus = 1;
    std::vector<std::int64_t> residues;
    /// CoprimeAffine: gcd(scale n + shift, coprime_to) must be 1.
    std::int64_t scale = 1;
    std::int64_t shift = 0;
    std::int64_t coprime_to = 1;

    static Filter none() { return {}; }
    static Filter residue_in(std::int64_t modulus, std::vector<std::int64_t> residues);
    static Filter coprime_affine(std::int64_t scale, std::int64_t shift, std::int64_t coprime_to);

    bool admits(std::int64_t n) const;
    std::string describe() const;
};

/// function(A n + B) == 0 (mod modulus) for admissible n. A modulus of 0 marks an exact identity.
struct CongruenceClaim {
    /// "p", "p_k:K", "gamma_sym", "gamma_alt", "a", or "identity".
    std::string function;
    std::int64_t scale = 1;
    std::int64_t offset = 0;
    std::uint64_t modulus = 0;
    Filter filter;
    std::string provenance;
    std::string statement;
    bool conjectural = false;
};

struct Observation {
    std::int64_t n = 0;
    /// The argument of the function, A n + B.
    std::int64_t index = 0;
    std::uint64_t residue = 0;
};

struct VerificationReport {
    CongruenceClaim claim;
    std::int64_t n_from = 0;
    std::int64_t n_to = 0;
    std::uint64_t checked = 0;
    std::vector<std::int64_t> skipped;
    std::vector<Observation> counterexamples;
    /// Filled only when a caller asks for every checked residue.
    std::vector<Observation> residues;
    std::int64_t truncation = 0;
    double elapsed_seconds = 0;
    Status status = Status::Empty;
    std::vector<std::string> notes;

    /// Sorts counterexamples and skipped values, and derives status from the counts.
    void finalize();
    bool passed() const noexcept { return status == Status::Pass || status == Status::TrivialPass; }
};

enum class Format { Json, Csv };

/// Deterministic rendering: stable key order, rows sorted by n, elapsed time only when `timing` is set.
std::string render(const std::vector<VerificationReport>& reports, Format format, bool timing = false);

} // namespace pcong
