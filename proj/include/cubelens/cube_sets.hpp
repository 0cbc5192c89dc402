#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cubelens/exact_arith.hpp"

namespace cubelens {

/// The frequency set {n^3 : start <= n <= start + length}.
struct CubeInterval {
  Natural start;   // N >= 1
  Natural length;  // k >= 0

  CubeInterval(Natural n, Natural k);
  std::uint64_t size() const;
};

std::vector<Natural> elements(const CubeInterval& interval);

/// Throws std::invalid_argument unless A is strictly increasing.
void require_sorted_set(std::span<const Integer> set);

/// Ordered pairs (a, b) in A x A with a + b = m (two-pointer scan).
std::uint64_t rep_ordered(std::span<const Integer> set, const Integer& m);
/// Unordered pairs {a, b}, a <= b, with a + b = m.
std::uint64_t rep_unordered(std::span<const Integer> set, const Integer& m);

struct RepProfile {
  std::vector<std::pair<Integer, std::uint64_t>> counts;  // sorted by sum, nonzero only
  Integer max_m;
  std::uint64_t max_r = 0;
  Natural energy;
};

struct SidonWitness {
  Integer a, b, c, d;  // a <= b, c <= d, a < c, a + b == c + d
  friend bool operator==(const SidonWitness&, const SidonWitness&) = default;
};

struct SidonResult {
  bool is_sidon = true;
  std::optional<SidonWitness> witness;
};

/// One unordered pair-sum A[i] + A[j] with i <= j.
struct PairSum {
  Integer sum;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
};

/// Every unordered pair-sum of A, sorted by (sum, i, j). OpenMP-parallel.
std::vector<PairSum> sorted_pair_sums(std::span<const Integer> set);

RepProfile rep_profile(std::span<const Integer> set);
SidonResult is_sidon(std::span<const Integer> set);

/// Smallest k <= k_max with elements(N, k) not Sidon, grown one cube at a time.
std::optional<std::uint64_t> sidon_threshold(const Natural& start, std::uint64_t k_max);

/// The largest length for which the Sidon property is guaranteed: isqrt(N/2).
/// floor(sqrt(N/2)) == isqrt(floor(N/2)) for every integer N.
Natural guaranteed_sidon_length(const Natural& start);

/// Checks elements(N, isqrt(N/2)) for each N in [from, to]; returns the
/// smallest N whose set fails, if any.
std::optional<std::uint64_t> sidon_sweep(std::uint64_t from, std::uint64_t to);

namespace serial {

// Single-threaded reference versions used by the tests and the benchmark.
RepProfile rep_profile(std::span<const Integer> set);
SidonResult is_sidon(std::span<const Integer> set);
std::optional<std::uint64_t> sidon_sweep(std::uint64_t from, std::uint64_t to);

}  // namespace serial

struct MpzHash {
  std::size_t operator()(const mpz_class& z) const noexcept;
};

}  // namespace cubelens
