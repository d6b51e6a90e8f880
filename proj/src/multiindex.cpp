#include "gaugebench/multiindex.hpp"

#include <utility>

namespace gb {

int sort_sign(MultiIndex& idx) {
    int sign = 1;
    const size_t n = idx.size();
    for (size_t i = 1; i < n; ++i) {
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    return sign;
}

namespace {
void combos_rec(int n, int p, int start, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (p - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        combos_rec(n, p, i + 1, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<MultiIndex> combinations(int n, int p) {
    std::vector<MultiIndex> out;
    if (p < 0 || p > n) return out;
    MultiIndex cur;
    combos_rec(n, p, 0, cur, out);
    return out;
}

bool strictly_increasing(const MultiIndex& idx, int bound) {
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= bound) return false;
        if (i > 0 && idx[i - 1] >= idx[i]) return false;
    }
    return true;
}

MultiIndex drop(const MultiIndex& idx, int pos) {
    MultiIndex out;
    out.reserve(idx.size());
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        if (i != pos) out.push_back(idx[i]);
    return out;
}

MultiIndex drop2(const MultiIndex& idx, int a, int b) {
    MultiIndex out;
    out.reserve(idx.size());
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        if (i != a && i != b) out.push_back(idx[i]);
    return out;
}

}  // namespace gb
