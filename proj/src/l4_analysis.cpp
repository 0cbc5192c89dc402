#include "cubelens/l4_analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include "cubelens/cube_sets.hpp"

namespace cubelens {

CoeffPoly CoeffPoly::from_terms(std::span<const std::pair<Integer, Gaussian>> terms) {
  CoeffPoly out;
  std::map<Integer, bool> seen;
  for (const auto& [n, a] : terms) {
    if (!seen.emplace(n, true).second) {
      throw std::invalid_argument("repeated frequency " + to_string(n));
    }
    out.set(n, a);
  }
  return out;
}

CoeffPoly CoeffPoly::all_ones(std::span<const Integer> support) {
  CoeffPoly out;
  for (const Integer& n : support) out.set(n, Gaussian{Ratio(1), Ratio(0)});
  return out;
}

void CoeffPoly::set(const Integer& n, Gaussian coeff) {
  if (coeff.is_zero()) {
    terms_.erase(n);
  } else {
    terms_.insert_or_assign(n, std::move(coeff));
  }
}

std::vector<Integer> CoeffPoly::support() const {
  std::vector<Integer> out;
  out.reserve(terms_.size());
  for (const auto& [n, a] : terms_) out.push_back(n);
  return out;
}

Ratio l2_sq(const CoeffPoly& f) {
  Ratio total(0);
  for (const auto& [n, a] : f.terms()) total += a.norm_sq();
  return total;
}

std::map<Integer, Gaussian> self_convolution(const CoeffPoly& f) {
  const std::vector<std::pair<Integer, Gaussian>> terms(f.terms().begin(), f.terms().end());
  const auto s = static_cast<std::ptrdiff_t>(terms.size());
  const Gaussian two{Ratio(2), Ratio(0)};
  std::map<Integer, Gaussian> out;

#pragma omp parallel
  {
    std::unordered_map<Integer, Gaussian, MpzHash> partial;
    Integer key;
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < s; ++i) {
      const auto& [ni, ai] = terms[i];
      key = ni + ni;
      partial[key] += ai * ai;
      for (std::ptrdiff_t j = i + 1; j < s; ++j) {
        const auto& [nj, aj] = terms[j];
        key = ni + nj;
        partial[key] += two * (ai * aj);
      }
    }
#pragma omp critical
    for (auto& [m, c] : partial) out[m] += c;
  }

  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

Ratio l4_fourth(const CoeffPoly& f) {
  Ratio total(0);
  for (const auto& [m, c] : self_convolution(f)) total += c.norm_sq();
  return total;
}

NormReport lemma21_check(const CoeffPoly& f) {
  NormReport out;
  out.l2_sq = l2_sq(f);
  out.l4_4 = l4_fourth(f);
  const std::vector<Integer> support = f.support();
  out.max_rep = rep_profile(support).max_r;
  out.bound_rhs = Ratio(Integer(static_cast<unsigned long>(out.max_rep))) * out.l2_sq * out.l2_sq;
  out.holds = out.l4_4 <= out.bound_rhs;
  return out;
}

double ratio_l4_l2(const CoeffPoly& f) {
  if (f.empty()) throw std::domain_error("ratio_l4_l2: zero polynomial");
  const double l4 = l4_fourth(f).get_d();
  const double l2 = l2_sq(f).get_d();
  return std::pow(l4, 0.25) / std::sqrt(l2);
}

namespace serial {

Ratio l4_fourth(const CoeffPoly& f) {
  std::map<Integer, Gaussian> conv;
  for (const auto& [n1, a1] : f.terms()) {
    for (const auto& [n2, a2] : f.terms()) conv[n1 + n2] += a1 * a2;
  }
  Ratio total(0);
  for (const auto& [m, c] : conv) total += c.norm_sq();
  return total;
}

}  // namespace serial

}  // namespace cubelens
