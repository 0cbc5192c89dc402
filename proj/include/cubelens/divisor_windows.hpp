#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubelens/exact_arith.hpp"

namespace cubelens {

struct Factorization {
  std::vector<std::pair<Natural, unsigned>> factors;  // primes strictly increasing

  Natural value() const;
  /// tau(m) = product of (e_i + 1).
  Natural divisor_count() const;
};

/// Primality: deterministic Miller-Rabin below 2^64, GMP's BPSW-based
/// mpz_probab_prime_p above.
bool is_prime(const Natural& n);

/// Complete factorization of m >= 1: trial division by primes below 2^16,
/// then Brent's variant of Pollard rho (additive constant 1, 2, ... on
/// cycle failure; starting point 2).
Factorization factor(const Natural& m);

/// Divisors of m in [lo, hi] in increasing order, generated from the
/// factorization with pruning of partial products above hi.
std::vector<Natural> divisors_in(const Natural& m, const Natural& lo, const Natural& hi);
std::vector<Natural> divisors_in(const Factorization& f, const Natural& lo, const Natural& hi);

struct WindowCount {
  Natural m;
  std::string lo_desc;
  std::string hi_desc;
  std::uint64_t count = 0;
  std::vector<Natural> divisors;
  std::uint64_t unresolved = 0;
};

enum class WindowSide {
  below,      // [M^(1/3) - delta, M^(1/3)]
  symmetric,  // [M^(1/3) - delta, M^(1/3) + delta]
};

/// #{d | M : M^(1/3) - delta <= d <= M^(1/3)} using only integer and rational
/// arithmetic.
WindowCount window_count_below_cuberoot(const Natural& big_m, const Ratio& delta,
                                        WindowSide side = WindowSide::below);

/// #{d | m : m^alpha <= d <= m^alpha + m^beta}. Divisors whose upper
/// comparison stays unresolved at the precision cap are included and tallied
/// in `unresolved`.
WindowCount window_count_exponent(const Natural& m, const Ratio& alpha, const Ratio& beta,
                                  std::size_t precision_cap = kDefaultPrecisionCap);

/// beta < alpha^2 is covered by the short-interval divisor theorem; alpha^2 <=
/// beta < alpha is the conjectural range.
enum class Regime { theorem, conjecture };
Regime classify_regime(const Ratio& alpha, const Ratio& beta);
const char* regime_name(Regime regime);

struct ScanMaximum {
  std::uint64_t m = 0;
  std::uint64_t count = 0;
  friend bool operator==(const ScanMaximum&, const ScanMaximum&) = default;
};

struct Thm22Scan {
  std::uint64_t m_from = 2;
  std::uint64_t m_to = 2;
  Ratio alpha;
  Ratio beta;
  Regime regime = Regime::theorem;
  std::uint64_t max_count = 0;
  std::uint64_t argmax_m = 0;                     // smallest m attaining max_count
  std::map<std::uint64_t, std::uint64_t> histogram;  // count -> how many m
  std::uint64_t unresolved = 0;
  std::vector<ScanMaximum> new_maxima;            // running maxima in m order
};

/// Window counts for every m in [m_from, m_to]. m_from >= 2. OpenMP-parallel
/// over contiguous chunks with an order-preserving merge.
Thm22Scan thm22_scan(std::uint64_t m_from, std::uint64_t m_to, const Ratio& alpha,
                     const Ratio& beta, std::size_t precision_cap = kDefaultPrecisionCap);

/// Folds scans over disjoint ranges: histograms add, the maximum keeps the
/// smallest argmax. Throws std::invalid_argument on mismatched exponents.
Thm22Scan merge_scans(std::vector<Thm22Scan> parts);

struct RepBoundViolation {
  Natural m;
  std::uint64_t reps = 0;
  std::uint64_t window = 0;
};

struct RepBoundReport {
  Natural start;
  Natural length;
  Ratio delta;                  // k^2 / N
  std::uint64_t sums_checked = 0;
  std::uint64_t representations = 0;
  Ratio max_ratio;              // max over m of reps / window count
  Natural max_ratio_m;
  std::vector<RepBoundViolation> violations;
  std::vector<Natural> reconstruction_failures;  // m whose u+v failed the identity
  std::vector<Natural> above_root_failures;      // m with (u+v)^3 > 4m

  bool ok() const {
    return violations.empty() && reconstruction_failures.empty() && above_root_failures.empty();
  }
};

/// For A = elements(N, k) and every representable m: rep_unordered(A, m) <=
/// window_count_below_cuberoot(4m, k^2/N).count, each u+v lies in that window,
/// and (4m/d - d^2)/3 == (u-v)^2 for d = u+v.
RepBoundReport rep_bound_check(const Natural& start, const Natural& length);

namespace serial {

Thm22Scan thm22_scan(std::uint64_t m_from, std::uint64_t m_to, const Ratio& alpha,
                     const Ratio& beta, std::size_t precision_cap = kDefaultPrecisionCap);
RepBoundReport rep_bound_check(const Natural& start, const Natural& length);

}  // namespace serial

}  // namespace cubelens
