#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <omp.h>

namespace cubelens::detail {

// Sorts equal-sized blocks in parallel, then merges neighbouring runs in
// parallel rounds. The comparator must induce a strict total order so the
// result does not depend on the thread count.
template <typename T, typename Less>
void parallel_sort(std::vector<T>& data, Less less) {
  const std::size_t n = data.size();
  const std::size_t threads = static_cast<std::size_t>(omp_get_max_threads());
  if (threads <= 1 || n < 4096) {
    std::sort(data.begin(), data.end(), less);
    return;
  }
  const std::size_t blocks = std::min(threads, n / 1024);
  std::vector<std::size_t> bounds(blocks + 1);
  for (std::size_t b = 0; b <= blocks; ++b) bounds[b] = n * b / blocks;

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    std::sort(data.begin() + bounds[b], data.begin() + bounds[b + 1], less);
  }

  for (std::size_t width = 1; width < blocks; width *= 2) {
    const std::ptrdiff_t pairs = static_cast<std::ptrdiff_t>((blocks + 2 * width - 1) / (2 * width));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < pairs; ++p) {
      const std::size_t lo = static_cast<std::size_t>(p) * 2 * width;
      const std::size_t mid = std::min(lo + width, blocks);
      const std::size_t hi = std::min(lo + 2 * width, blocks);
      if (mid < hi) {
        std::inplace_merge(data.begin() + bounds[lo], data.begin() + bounds[mid],
                           data.begin() + bounds[hi], less);
      }
    }
  }
}

}  // namespace cubelens::detail
