#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cubelens/exact_arith.hpp"

namespace cubelens {

/// Complex number with exact rational parts.
struct Gaussian {
  Ratio re;
  Ratio im;

  bool is_zero() const { return re == 0 && im == 0; }
  Ratio norm_sq() const { return re * re + im * im; }

  friend Gaussian operator*(const Gaussian& x, const Gaussian& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + y.re * x.im};
  }
  Gaussian& operator+=(const Gaussian& y) {
    re += y.re;
    im += y.im;
    return *this;
  }
  friend bool operator==(const Gaussian& x, const Gaussian& y) {
    return x.re == y.re && x.im == y.im;
  }
};

/// f(x) = sum over n of a_n e(n x), finitely supported, zero coefficients
/// never stored.
class CoeffPoly {
 public:
  CoeffPoly() = default;

  /// Throws std::invalid_argument on a repeated frequency.
  static CoeffPoly from_terms(std::span<const std::pair<Integer, Gaussian>> terms);
  /// Unit coefficient on every element of the set.
  static CoeffPoly all_ones(std::span<const Integer> support);

  /// Sets a_n; a zero coefficient removes n from the support.
  void set(const Integer& n, Gaussian coeff);

  const std::map<Integer, Gaussian>& terms() const { return terms_; }
  std::vector<Integer> support() const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::map<Integer, Gaussian> terms_;
};

struct NormReport {
  Ratio l2_sq;
  Ratio l4_4;
  std::uint64_t max_rep = 0;
  Ratio bound_rhs;  // max_rep * l2_sq^2
  bool holds = false;
};

/// ||f||_2^2 by Parseval.
Ratio l2_sq(const CoeffPoly& f);

/// ||f||_4^4 = ||f^2||_2^2, from the sparse self-convolution of the
/// coefficients. The pair loop is OpenMP-parallel with per-thread partial maps.
Ratio l4_fourth(const CoeffPoly& f);

/// The coefficients of f^2 keyed by frequency, zeros dropped.
std::map<Integer, Gaussian> self_convolution(const CoeffPoly& f);

/// Checks ||f||_4^4 <= (max_m r_A^+(m)) ||f||_2^4 with A = supp f.
NormReport lemma21_check(const CoeffPoly& f);

/// ||f||_4 / ||f||_2 as an approximate double; throws std::domain_error on f == 0.
double ratio_l4_l2(const CoeffPoly& f);

namespace serial {

Ratio l4_fourth(const CoeffPoly& f);

}  // namespace serial

}  // namespace cubelens
