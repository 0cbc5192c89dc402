#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "cubelens/divisor_windows.hpp"

namespace cubelens {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialBound = 1u << 16;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<u64> out;
    for (u64 i = 2; i < kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j < kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

// Deterministic for every n < 2^64 with the first twelve prime bases.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 absdiff(u64 a, u64 b) { return a > b ? a - b : b - a; }

// Brent's cycle detection on x -> x^2 + c, batching gcds over 128 steps.
// Returns n on failure.
u64 brent_u64(u64 n, u64 c) {
  auto f = [n, c](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
  constexpr u64 kBatch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        y = f(y);
        q = mulmod(q, absdiff(x, y), n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(absdiff(x, ys), n);
    } while (g == 1);
  }
  return g;
}

Natural brent_mpz(const Natural& n, unsigned long c) {
  auto f = [&n, c](Natural& x) {
    x = x * x + c;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  };
  constexpr u64 kBatch = 128;
  Natural y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
  for (u64 r = 1; g == 1; r *= 2) {
    x = y;
    for (u64 i = 0; i < r; ++i) f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        f(y);
        diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    do {
      f(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split_u64(u64 n, std::vector<Natural>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.emplace_back(static_cast<unsigned long>(n));
    return;
  }
  for (u64 c = 1;; ++c) {
    const u64 d = brent_u64(n, c);
    if (d != n && d != 1) {
      split_u64(d, primes);
      split_u64(n / d, primes);
      return;
    }
  }
}

void split(const Natural& n, std::vector<Natural>& primes) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    split_u64(n.get_ui(), primes);
    return;
  }
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    const Natural d = brent_mpz(n, c);
    if (d != n && d != 1) {
      split(d, primes);
      split(n / d, primes);
      return;
    }
  }
}

void enumerate(const Factorization& f, std::size_t idx, const Natural& current, const Natural& lo,
               const Natural& hi, std::vector<Natural>& out) {
  if (idx == f.factors.size()) {
    if (current >= lo) out.push_back(current);
    return;
  }
  const auto& [p, e] = f.factors[idx];
  Natural value = current;
  for (unsigned i = 0; i <= e; ++i) {
    enumerate(f, idx + 1, value, lo, hi, out);
    if (i == e) break;
    value *= p;
    if (value > hi) break;
  }
}

}  // namespace

Natural Factorization::value() const {
  Natural out = 1;
  for (const auto& [p, e] : factors) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    out *= pe;
  }
  return out;
}

Natural Factorization::divisor_count() const {
  Natural out = 1;
  for (const auto& [p, e] : factors) out *= e + 1;
  return out;
}

bool is_prime(const Natural& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
}

Factorization factor(const Natural& m) {
  if (m < 1) throw std::domain_error("factor: m must be at least 1");
  std::vector<Natural> primes;
  Natural rest = m;
  for (u64 p : small_primes()) {
    const Natural pz(static_cast<unsigned long>(p));
    if (pz * pz > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      primes.push_back(pz);
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
  }
  if (rest > 1) {
    // Nothing below 2^16 divides rest, so below 2^32 it is prime.
    if (rest < Natural(static_cast<unsigned long>(kTrialBound * kTrialBound))) {
      primes.push_back(rest);
    } else {
      split(rest, primes);
    }
  }
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (const Natural& p : primes) {
    if (!out.factors.empty() && out.factors.back().first == p) {
      ++out.factors.back().second;
    } else {
      out.factors.emplace_back(p, 1u);
    }
  }
  return out;
}

std::vector<Natural> divisors_in(const Factorization& f, const Natural& lo, const Natural& hi) {
  if (lo > hi) throw std::invalid_argument("divisors_in: lo must not exceed hi");
  std::vector<Natural> out;
  if (hi < 1) return out;
  enumerate(f, 0, Natural(1), lo, hi, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Natural> divisors_in(const Natural& m, const Natural& lo, const Natural& hi) {
  return divisors_in(factor(m), lo, hi);
}

}  // namespace cubelens
