#include "pcong/resources.hpp"

#include <atomic>

#include "pcong/error.hpp"

namespace pcong {

namespace {
std::atomic<std::size_t> g_budget{std::size_t{4} << 30};
}

void set_memory_budget(std::size_t bytes)
{
    g_budget.store(bytes);
}

std::size_t memory_budget()
{
    return g_budget.load();
}

void check_allocation(std::size_t entries, std::size_t bytes_per_entry, const std::string& what)
{
    if (entries <= kLargeTableEntries) return;
    check_estimate(entries * bytes_per_entry, what);
}

void check_estimate(std::size_t bytes, const std::string& what)
{
    const std::size_t budget = memory_budget();
    if (bytes > budget) throw BudgetExceeded(what, bytes, budget);
}

} // namespace pcong
