#include <map>
#include <unordered_map>

#include "cubelens/cube_sets.hpp"

namespace cubelens::serial {

RepProfile rep_profile(std::span<const Integer> set) {
  require_sorted_set(set);
  std::map<Integer, std::uint64_t> counts;
  for (const Integer& a : set) {
    for (const Integer& b : set) ++counts[a + b];
  }
  RepProfile out;
  for (const auto& [m, r] : counts) {
    if (r > out.max_r) {
      out.max_r = r;
      out.max_m = m;
    }
    out.energy += Natural(r) * r;
    out.counts.emplace_back(m, r);
  }
  return out;
}

SidonResult is_sidon(std::span<const Integer> set) {
  require_sorted_set(set);
  std::unordered_map<Integer, std::pair<std::size_t, std::size_t>, MpzHash> first_pair;
  Integer s;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i; j < set.size(); ++j) {
      s = set[i] + set[j];
      const auto [it, fresh] = first_pair.try_emplace(s, i, j);
      if (!fresh) {
        const auto [fi, fj] = it->second;
        return {false, SidonWitness{set[fi], set[fj], set[i], set[j]}};
      }
    }
  }
  return {};
}

std::optional<std::uint64_t> sidon_sweep(std::uint64_t from, std::uint64_t to) {
  for (std::uint64_t n = from; n <= to; ++n) {
    const Natural start(static_cast<unsigned long>(n));
    const auto set = elements(CubeInterval(start, guaranteed_sidon_length(start)));
    if (!is_sidon(set).is_sidon) return n;
  }
  return std::nullopt;
}

}  // namespace cubelens::serial
