#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cartan {

/// Calls f(indices) for every k-subset of {0..m-1} in lexicographic order;
/// stops early if f returns false.
template <typename F>
bool for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls f(prefix) for every injective ordered k-tuple of indices from
/// {0..m-1}, lexicographically; stops early if f returns false.
template <typename F>
bool for_each_arrangement(std::size_t m, std::size_t k, F&& f) {
  std::vector<std::size_t> chosen;
  std::vector<bool> used(m, false);
  auto rec = [&](auto&& self) -> bool {
    if (chosen.size() == k) return f(std::span<const std::size_t>(chosen));
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      chosen.push_back(i);
      const bool go_on = self(self);
      chosen.pop_back();
      used[i] = false;
      if (!go_on) return false;
    }
    return true;
  };
  return rec(rec);
}

}  // namespace cartan
