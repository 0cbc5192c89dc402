#include "cubelens/cube_sets.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include <omp.h>

#include "parallel_sort.hpp"

namespace cubelens {

namespace {

constexpr std::uint64_t kMaxSetSize = std::numeric_limits<std::uint32_t>::max() - 1;

bool pair_sum_less(const PairSum& x, const PairSum& y) {
  const int c = cmp(x.sum, y.sum);
  if (c != 0) return c < 0;
  return std::tie(x.i, x.j) < std::tie(y.i, y.j);
}

std::size_t row_offset(std::size_t n, std::size_t i) { return i * n - i * (i - 1) / 2; }

}  // namespace

std::size_t MpzHash::operator()(const mpz_class& z) const noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9E3779B97F4A7C15ull;
  const int limbs = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
  for (int i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

CubeInterval::CubeInterval(Natural n, Natural k) : start(std::move(n)), length(std::move(k)) {
  if (start < 1) throw std::invalid_argument("interval start N must be at least 1");
  if (length < 0) throw std::invalid_argument("interval length k must be non-negative");
  if (length >= kMaxSetSize) throw std::invalid_argument("interval length k is too large");
}

std::uint64_t CubeInterval::size() const { return length.get_ui() + 1; }

std::vector<Natural> elements(const CubeInterval& interval) {
  std::vector<Natural> out;
  out.reserve(interval.size());
  Natural n = interval.start;
  for (std::uint64_t i = 0; i < interval.size(); ++i, ++n) out.push_back(n * n * n);
  return out;
}

void require_sorted_set(std::span<const Integer> set) {
  if (set.size() > kMaxSetSize) throw std::invalid_argument("set is too large");
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (!(set[i - 1] < set[i])) {
      throw std::invalid_argument("set must be strictly increasing (sorted, duplicate-free)");
    }
  }
}

std::uint64_t rep_ordered(std::span<const Integer> set, const Integer& m) {
  std::uint64_t count = 0;
  std::ptrdiff_t lo = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(set.size()) - 1;
  Integer s;
  while (lo <= hi) {
    s = set[lo] + set[hi];
    const int c = cmp(s, m);
    if (c < 0) {
      ++lo;
    } else if (c > 0) {
      --hi;
    } else {
      count += (lo == hi) ? 1 : 2;
      ++lo;
      --hi;
    }
  }
  return count;
}

std::uint64_t rep_unordered(std::span<const Integer> set, const Integer& m) {
  const std::uint64_t ordered = rep_ordered(set, m);
  std::uint64_t diagonal = 0;
  if (mpz_even_p(m.get_mpz_t())) {
    const Integer half = m / 2;
    diagonal = std::binary_search(set.begin(), set.end(), half) ? 1 : 0;
  }
  return (ordered + diagonal) / 2;
}

std::vector<PairSum> sorted_pair_sums(std::span<const Integer> set) {
  require_sorted_set(set);
  const std::size_t n = set.size();
  std::vector<PairSum> sums(n * (n + 1) / 2);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    std::size_t at = row_offset(n, i);
    for (std::size_t j = i; j < n; ++j, ++at) {
      sums[at].sum = set[i] + set[j];
      sums[at].i = static_cast<std::uint32_t>(i);
      sums[at].j = static_cast<std::uint32_t>(j);
    }
  }
  detail::parallel_sort(sums, pair_sum_less);
  return sums;
}

RepProfile rep_profile(std::span<const Integer> set) {
  const std::vector<PairSum> sums = sorted_pair_sums(set);
  RepProfile out;
  for (std::size_t g = 0; g < sums.size();) {
    std::uint64_t r = 0;
    std::size_t e = g;
    for (; e < sums.size() && sums[e].sum == sums[g].sum; ++e) r += sums[e].i == sums[e].j ? 1 : 2;
    if (r > out.max_r) {
      out.max_r = r;
      out.max_m = sums[g].sum;
    }
    out.energy += Natural(r) * r;
    out.counts.emplace_back(sums[g].sum, r);
    g = e;
  }
  return out;
}

SidonResult is_sidon(std::span<const Integer> set) {
  const std::vector<PairSum> sums = sorted_pair_sums(set);
  const std::size_t n = sums.size();

  // A hash scan in lexicographic pair order first trips on the second pair of
  // some equal-sum group; the earliest such trip is the lexicographically
  // smallest second pair over all groups.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best = kNone;
#pragma omp parallel
  {
    std::size_t local = kNone;
#pragma omp for schedule(static)
    for (std::ptrdiff_t sg = 1; sg < static_cast<std::ptrdiff_t>(n); ++sg) {
      const auto g = static_cast<std::size_t>(sg);
      const bool second_of_group = sums[g].sum == sums[g - 1].sum &&
                                   (g < 2 || sums[g - 2].sum != sums[g].sum);
      if (!second_of_group) continue;
      if (local == kNone ||
          std::tie(sums[g].i, sums[g].j) < std::tie(sums[local].i, sums[local].j)) {
        local = g;
      }
    }
#pragma omp critical
    {
      if (local != kNone &&
          (best == kNone ||
           std::tie(sums[local].i, sums[local].j) < std::tie(sums[best].i, sums[best].j))) {
        best = local;
      }
    }
  }

  if (best == kNone) return {};
  const PairSum& first = sums[best - 1];
  const PairSum& second = sums[best];
  return {false, SidonWitness{set[first.i], set[first.j], set[second.i], set[second.j]}};
}

std::optional<std::uint64_t> sidon_threshold(const Natural& start, std::uint64_t k_max) {
  if (start < 1) throw std::invalid_argument("interval start N must be at least 1");
  std::vector<Natural> cubes;
  std::unordered_set<Integer, MpzHash> seen;
  Natural n = start;
  Integer s;
  for (std::uint64_t k = 0; k <= k_max; ++k, ++n) {
    cubes.push_back(n * n * n);
    const Natural& newest = cubes.back();
    for (const Natural& c : cubes) {
      s = c + newest;
      if (!seen.insert(s).second) return k;
    }
  }
  return std::nullopt;
}

Natural guaranteed_sidon_length(const Natural& start) { return isqrt(start / 2); }

std::optional<std::uint64_t> sidon_sweep(std::uint64_t from, std::uint64_t to) {
  std::uint64_t first_bad = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(dynamic, 8) reduction(min : first_bad)
  for (std::uint64_t n = from; n <= to; ++n) {
    const Natural start(static_cast<unsigned long>(n));
    const auto set = elements(CubeInterval(start, guaranteed_sidon_length(start)));
    if (!serial::is_sidon(set).is_sidon) first_bad = std::min(first_bad, n);
  }
  if (first_bad == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return first_bad;
}

}  // namespace cubelens
