#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nec {

/// C(n, k); throws std::overflow_error past 2^64.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets of {0..n-1}, each sorted, in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// Advances `idx` (a sorted k-subset of {0..n-1}) to its lexicographic
/// successor. Returns false once the last subset has been passed.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n);

}  // namespace nec
