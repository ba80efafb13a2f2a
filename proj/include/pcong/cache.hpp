#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "pcong/qseries.hpp"

namespace pcong {

/// Series record: "QSC1", version u8, ring tag u8 (0 integers, 1 modular), modulus u64, grain u32,
/// start i64, truncation i64, then one coefficient per slot. Modular coefficients are u64; integer
/// coefficients are a u32 byte count followed by a sign byte (0 or 1) and little-endian magnitude bytes.
/// All multi-byte fields are little-endian.
void write_record(std::ostream& os, const QSeries& s);
/// Throws Error on a malformed or truncated record.
QSeries read_record(std::istream& is);

using Digest = std::array<std::uint8_t, 32>;
Digest sha256(const std::string& bytes);

struct CacheEntry {
    std::string tag;
    Ring ring = Ring::integers();
    std::int64_t truncation = 0;
    std::filesystem::path path;
    Digest checksum{};
    /// Seconds since the Unix epoch.
    std::int64_t created_at = 0;
};

/// On-disk store of coefficient tables keyed by (tag, ring). A file holds the record followed by a
/// trailer: tag length u16, tag bytes, created-at i64, and the SHA-256 of everything before it.
///
/// Registered tags: "p", "p_k:K", "f", "F:ell", "g:ell:j". A default-constructed cache has no
/// directory and builds every request without persisting it.
class Cache {
public:
    Cache() = default;
    explicit Cache(std::filesystem::path dir);
    /// Uses $PCONG_CACHE_DIR when set, otherwise a disabled cache.
    static Cache from_environment();

    bool enabled() const noexcept { return !dir_.empty(); }
    const std::filesystem::path& directory() const noexcept { return dir_; }

    /// The table for `tag` over `ring`, exact below q^T. Serves a prefix of a longer stored entry,
    /// otherwise builds, writes the file atomically and returns. A corrupt file is evicted and rebuilt.
    QSeries get_or_build(const std::string& tag, const Ring& ring, std::int64_t t);
    /// The validated entry for (tag, ring), if one is stored.
    std::optional<CacheEntry> lookup(const std::string& tag, const Ring& ring) const;
    std::filesystem::path path_for(const std::string& tag, const Ring& ring) const;

    struct Stats {
        unsigned loads = 0;
        unsigned builds = 0;
        unsigned evictions = 0;
    };
    Stats stats() const noexcept { return stats_; }

    /// Receives warnings such as checksum evictions. Defaults to standard error.
    void set_warning_sink(std::function<void(const std::string&)> sink) { warn_ = std::move(sink); }

private:
    QSeries build(const std::string& tag, const Ring& ring, std::int64_t t);
    std::optional<QSeries> load(const std::string& tag, const Ring& ring, std::int64_t t);
    void store(const std::string& tag, const QSeries& s);
    void warn(const std::string& msg) const;

    std::filesystem::path dir_;
    Stats stats_;
    std::function<void(const std::string&)> warn_;
};

} // namespace pcong
