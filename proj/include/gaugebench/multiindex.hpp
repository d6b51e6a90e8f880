#pragma once

#include <vector>

namespace gb {

using MultiIndex = std::vector<int>;

// Sorts idx ascending in place; returns the permutation sign, or 0 on a repeated entry.
int sort_sign(MultiIndex& idx);

// All strictly increasing p-subsets of {0, ..., n-1}, lexicographic.
std::vector<MultiIndex> combinations(int n, int p);

bool strictly_increasing(const MultiIndex& idx, int bound);

// idx with position pos removed.
MultiIndex drop(const MultiIndex& idx, int pos);
MultiIndex drop2(const MultiIndex& idx, int i, int j);

}  // namespace gb
