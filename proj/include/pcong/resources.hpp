#pragma once

#include <cstddef>
#include <string>

namespace pcong {

inline constexpr std::size_t kLargeTableEntries = std::size_t{1} << 20;

void set_memory_budget(std::size_t bytes);
std::size_t memory_budget();

/// Throws BudgetExceeded if a table of `entries` elements of `bytes_per_entry` bytes would
/// exceed the memory budget. Tables up to 2^20 entries are always allowed.
void check_allocation(std::size_t entries, std::size_t bytes_per_entry, const std::string& what);

/// Throws BudgetExceeded if an aggregate estimate exceeds the memory budget.
void check_estimate(std::size_t bytes, const std::string& what);

} // namespace pcong
