#include "pcong/config.hpp"

#include <cstdlib>

#include "pcong/error.hpp"
#include "pcong/parallel.hpp"
#include "pcong/resources.hpp"

namespace pcong {

RunConfig RunConfig::from_environment()
{
    RunConfig c;
    if (const char* dir = std::getenv("PCONG_CACHE_DIR"); dir != nullptr && *dir != '\0') c.cache_dir = dir;
    return c;
}

void RunConfig::apply() const
{
    set_memory_budget(memory_budget);
    set_thread_count(threads);
}

std::size_t parse_byte_size(const std::string& text)
{
    if (text.empty()) throw DomainError("empty size");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::logic_error&) {
        throw DomainError("malformed size '" + text + "'");
    }
    const std::string suffix = text.substr(used);
    unsigned shift = 0;
    if (suffix.empty() || suffix == "B")
        shift = 0;
    else if (suffix == "K" || suffix == "KiB")
        shift = 10;
    else if (suffix == "M" || suffix == "MiB")
        shift = 20;
    else if (suffix == "G" || suffix == "GiB")
        shift = 30;
    else
        throw DomainError("unknown size suffix '" + suffix + "'");
    return static_cast<std::size_t>(v) << shift;
}

} // namespace pcong
