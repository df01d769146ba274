#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace chromoid {

/// Disjoint sets over 0..n-1 whose root is always the minimum element.
class DisjointSet {
public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t i) {
    // path halving
    while (parent_[i] != i)
      i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  /// Returns true if a union was performed.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::uint32_t> parent_;
};

} // namespace chromoid
