#pragma once

#include <cstddef>
#include <vector>

namespace mt::detail {

// Visits every k-subset of {0..n-1} in lexicographic order; stops when f returns true.
template <class F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (f(static_cast<const std::vector<std::size_t>&>(idx))) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace mt::detail
