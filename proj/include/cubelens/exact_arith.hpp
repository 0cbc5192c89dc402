#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace cubelens {

// Arbitrary-precision integers and rationals. Natural is the same storage as
// Integer; parse_natural() and the module preconditions enforce value >= 0.
using Integer = mpz_class;
using Natural = mpz_class;
using Ratio = mpq_class;  // always canonical: den > 0, gcd(|num|, den) = 1

inline constexpr std::size_t kDefaultPrecisionCap = 4096;
inline constexpr std::size_t kInitialPrecision = 128;

Integer parse_integer(std::string_view text);
Natural parse_natural(std::string_view text);
/// Accepts "p/q", "p" or "-p/q"; the result is canonicalized.
Ratio parse_ratio(std::string_view text);
std::string to_string(const Integer& value);
std::string to_string(const Ratio& value);

/// Floor of the k-th root of n (k >= 1), by Newton iteration with an exact
/// final adjustment: returns r with r^k <= n < (r+1)^k.
Natural iroot(const Natural& n, unsigned long k);
inline Natural icbrt(const Natural& n) { return iroot(n, 3); }
inline Natural isqrt(const Natural& n) { return iroot(n, 2); }

/// Smallest r with r^k >= n.
Natural iroot_ceil(const Natural& n, unsigned long k);

bool is_perfect_square(const Natural& n);

/// Orders d against m^(p/q) by comparing d^q with m^p.
std::strong_ordering pow_cmp(const Natural& d, const Natural& m, unsigned long p,
                             unsigned long q);

/// Orders d against m^alpha + m^beta. Perfect-power terms are evaluated
/// exactly; the rest use outward-rounded MPFR intervals, starting at 128 bits
/// and doubling up to precision_cap. std::nullopt means the interval still
/// contained d at the cap.
std::optional<std::strong_ordering> cmp_against_power_sum(
    const Natural& d, const Natural& m, const Ratio& alpha, const Ratio& beta,
    std::size_t precision_cap = kDefaultPrecisionCap);

/// Enclosure [lo, hi] of m^(p/q) with integers lo <= m^(p/q) <= hi; exact when
/// m^p is a perfect q-th power (lo == hi).
struct RootBounds {
  Natural lo;
  Natural hi;
  bool exact;
};
RootBounds rational_power_bounds(const Natural& m, const Ratio& exponent);

/// Upper bound on floor(m^alpha + m^beta) from a single 64-bit MPFR pass.
Natural power_sum_floor_upper(const Natural& m, const Ratio& alpha, const Ratio& beta);

/// Numerator and denominator of a positive exponent as machine integers.
/// Throws std::domain_error when either does not fit in unsigned long.
std::pair<unsigned long, unsigned long> exponent_parts(const Ratio& exponent);

}  // namespace cubelens
