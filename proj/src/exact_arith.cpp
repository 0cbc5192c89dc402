#include "cubelens/exact_arith.hpp"

#include <stdexcept>

#include "mpfr_handle.hpp"

namespace cubelens {

namespace {

using detail::MpfrHandle;

Integer pow_ui(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

bool valid_decimal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

// One term m^(p/q) of an endpoint, kept either as an exact integer or as the
// integer m^p whose q-th root is irrational.
struct PowerTerm {
  Natural power;  // m^p
  unsigned long root = 1;
  std::optional<Natural> exact;

  PowerTerm(const Natural& m, const Ratio& exponent) {
    const auto [p, q] = exponent_parts(exponent);
    power = pow_ui(m, p);
    root = q;
    Natural r = iroot(power, q);
    if (pow_ui(r, q) == power) exact = std::move(r);
  }

  void enclose(mpfr_ptr lo, mpfr_ptr hi) const {
    if (exact) {
      mpfr_set_z(lo, exact->get_mpz_t(), MPFR_RNDD);
      mpfr_set_z(hi, exact->get_mpz_t(), MPFR_RNDU);
      return;
    }
    mpfr_set_z(lo, power.get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(lo, lo, root, MPFR_RNDD);
    mpfr_set_z(hi, power.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(hi, hi, root, MPFR_RNDU);
  }
};

void require_unit_exponent(const Ratio& exponent, const char* name) {
  if (exponent <= 0 || exponent >= 1) {
    throw std::domain_error(std::string(name) + " must lie strictly between 0 and 1");
  }
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!valid_decimal(text)) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Natural parse_natural(std::string_view text) {
  Integer value = parse_integer(text);
  if (value < 0) {
    throw std::invalid_argument("expected a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

Ratio parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Ratio(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Ratio out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Ratio& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Natural iroot(const Natural& n, unsigned long k) {
  if (k == 0) throw std::domain_error("iroot: root index must be positive");
  if (n < 0) throw std::domain_error("iroot: negative radicand");
  if (n < 2 || k == 1) return n;

  // Start above the root: 2^ceil(bits/k) > n^(1/k).
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  Natural x;
  mpz_setbit(x.get_mpz_t(), (bits + k - 1) / k);

  // Newton from above decreases monotonically to floor(n^(1/k)).
  for (;;) {
    Natural next = (Natural(k - 1) * x + n / pow_ui(x, k - 1)) / k;
    if (next >= x) break;
    x = std::move(next);
  }
  while (pow_ui(x, k) > n) --x;
  while (pow_ui(x + 1, k) <= n) ++x;
  return x;
}

Natural iroot_ceil(const Natural& n, unsigned long k) {
  Natural r = iroot(n, k);
  if (pow_ui(r, k) < n) ++r;
  return r;
}

bool is_perfect_square(const Natural& n) {
  if (n < 0) return false;
  const Natural r = isqrt(n);
  return r * r == n;
}

std::strong_ordering pow_cmp(const Natural& d, const Natural& m, unsigned long p,
                             unsigned long q) {
  if (d < 1 || m < 1) throw std::domain_error("pow_cmp: d and m must be positive");
  if (p == 0 || q == 0) throw std::domain_error("pow_cmp: exponent parts must be positive");
  const int c = cmp(pow_ui(d, q), pow_ui(m, p));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::pair<unsigned long, unsigned long> exponent_parts(const Ratio& exponent) {
  if (exponent <= 0) throw std::domain_error("exponent must be positive");
  if (!exponent.get_num().fits_ulong_p() || !exponent.get_den().fits_ulong_p()) {
    throw std::domain_error("exponent numerator/denominator too large");
  }
  return {exponent.get_num().get_ui(), exponent.get_den().get_ui()};
}

RootBounds rational_power_bounds(const Natural& m, const Ratio& exponent) {
  const auto [p, q] = exponent_parts(exponent);
  const Natural power = pow_ui(m, p);
  Natural lo = iroot(power, q);
  if (pow_ui(lo, q) == power) return {lo, lo, true};
  return {lo, lo + 1, false};
}

std::optional<std::strong_ordering> cmp_against_power_sum(const Natural& d, const Natural& m,
                                                          const Ratio& alpha, const Ratio& beta,
                                                          std::size_t precision_cap) {
  require_unit_exponent(alpha, "alpha");
  require_unit_exponent(beta, "beta");
  if (m < 2) throw std::domain_error("cmp_against_power_sum: m must be at least 2");

  const PowerTerm a(m, alpha);
  const PowerTerm b(m, beta);
  if (a.exact && b.exact) {
    const int c = cmp(d, *a.exact + *b.exact);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  for (std::size_t prec = kInitialPrecision; prec <= precision_cap; prec *= 2) {
    const auto p = static_cast<mpfr_prec_t>(prec);
    MpfrHandle a_lo(p), a_hi(p), b_lo(p), b_hi(p), lo(p), hi(p);
    a.enclose(a_lo.get(), a_hi.get());
    b.enclose(b_lo.get(), b_hi.get());
    mpfr_add(lo.get(), a_lo.get(), b_lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a_hi.get(), b_hi.get(), MPFR_RNDU);
    if (mpfr_cmp_z(lo.get(), d.get_mpz_t()) > 0) return std::strong_ordering::less;
    if (mpfr_cmp_z(hi.get(), d.get_mpz_t()) < 0) return std::strong_ordering::greater;
  }
  return std::nullopt;
}

Natural power_sum_floor_upper(const Natural& m, const Ratio& alpha, const Ratio& beta) {
  const PowerTerm a(m, alpha);
  const PowerTerm b(m, beta);
  MpfrHandle a_lo(64), a_hi(64), b_lo(64), b_hi(64);
  a.enclose(a_lo.get(), a_hi.get());
  b.enclose(b_lo.get(), b_hi.get());
  mpfr_add(a_hi.get(), a_hi.get(), b_hi.get(), MPFR_RNDU);
  Natural out;
  mpfr_get_z(out.get_mpz_t(), a_hi.get(), MPFR_RNDD);
  return out;
}

}  // namespace cubelens
