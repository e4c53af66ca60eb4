#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace rankpc {

/// Calls `visit(subset)` for every size-k subset of `pool`, in lexicographic
/// order of positions. Stops early when `visit` returns true; returns whether
/// it did.
template <typename T, typename Visit>
bool for_each_combination(const std::vector<T>& pool, std::size_t k, Visit&& visit) {
  const std::size_t n = pool.size();
  if (k > n) return false;
  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::vector<T> subset(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = pool[pos[i]];
    if (visit(static_cast<const std::vector<T>&>(subset))) return true;
    // Advance the rightmost position that still has room.
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

}  // namespace rankpc
