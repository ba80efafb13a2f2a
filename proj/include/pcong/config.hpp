#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "pcong/report.hpp"

namespace pcong {

struct RunConfig {
    std::size_t memory_budget = std::size_t{4} << 30;
    unsigned threads = 1;
    std::filesystem::path cache_dir;
    bool long_run = false;
    Format format = Format::Json;
    std::uint64_t seed = 20240601;
    bool timing = false;

    /// Defaults with cache_dir taken from $PCONG_CACHE_DIR.
    static RunConfig from_environment();
    /// Installs the memory budget and thread count process-wide.
    void apply() const;
};

/// Parses sizes such as "512M", "4G" or a plain byte count.
std::size_t parse_byte_size(const std::string& text);

} // namespace pcong
