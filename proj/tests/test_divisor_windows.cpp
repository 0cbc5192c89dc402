#include <doctest.h>

#include <mpfr.h>

#include <random>

#include "cubelens/cube_sets.hpp"
#include "cubelens/divisor_windows.hpp"

using namespace cubelens;

namespace {

std::vector<Natural> nats(std::initializer_list<unsigned long> values) {
  std::vector<Natural> out;
  for (unsigned long v : values) out.emplace_back(v);
  return out;
}

std::vector<unsigned> smallest_prime_factor_sieve(unsigned limit) {
  std::vector<unsigned> spf(limit + 1, 0);
  for (unsigned i = 2; i <= limit; ++i) {
    if (spf[i]) continue;
    for (unsigned j = i; j <= limit; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  return spf;
}

// Oracle: all divisors by trial up to sqrt(m).
std::vector<Natural> all_divisors(unsigned long m) {
  std::vector<Natural> low, high;
  for (unsigned long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    low.emplace_back(d);
    if (d * d != m) high.emplace_back(m / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

// Oracle for the exponent window: 1024-bit round-to-nearest endpoints.
std::vector<Natural> naive_exponent_window(unsigned long m, unsigned long a_num, unsigned long a_den,
                                           unsigned long b_num, unsigned long b_den) {
  mpfr_t lo, hi, t;
  mpfr_inits2(1024, lo, hi, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(lo, m, MPFR_RNDN);
  mpfr_pow_ui(lo, lo, a_num, MPFR_RNDN);
  mpfr_rootn_ui(lo, lo, a_den, MPFR_RNDN);
  mpfr_set_ui(t, m, MPFR_RNDN);
  mpfr_pow_ui(t, t, b_num, MPFR_RNDN);
  mpfr_rootn_ui(t, t, b_den, MPFR_RNDN);
  mpfr_add(hi, lo, t, MPFR_RNDN);
  std::vector<Natural> out;
  for (const Natural& d : all_divisors(m)) {
    if (mpfr_cmp_ui(lo, d.get_ui()) <= 0 && mpfr_cmp_ui(hi, d.get_ui()) >= 0) out.push_back(d);
  }
  mpfr_clears(lo, hi, t, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace

TEST_CASE("factor examples") {
  CHECK(factor(Natural(1)).factors.empty());
  const Factorization f = factor(Natural(1729));
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == std::pair<Natural, unsigned>(Natural(7), 1));
  CHECK(f.factors[1] == std::pair<Natural, unsigned>(Natural(13), 1));
  CHECK(f.factors[2] == std::pair<Natural, unsigned>(Natural(19), 1));
  const Factorization g = factor(Natural(1024));
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0] == std::pair<Natural, unsigned>(Natural(2), 10));
  CHECK_THROWS_AS(factor(Natural(0)), std::domain_error);
}

TEST_CASE("factor agrees with a smallest-prime-factor sieve for m <= 10^5") {
  const auto spf = smallest_prime_factor_sieve(100000);
  for (unsigned m = 2; m <= 100000; ++m) {
    std::vector<std::pair<Natural, unsigned>> expected;
    for (unsigned rest = m; rest > 1; rest /= spf[rest]) {
      if (!expected.empty() && expected.back().first == spf[rest]) {
        ++expected.back().second;
      } else {
        expected.emplace_back(Natural(spf[rest]), 1);
      }
    }
    REQUIRE(factor(Natural(m)).factors == expected);
  }
}

TEST_CASE("factor reconstructs random m up to 10^18 with prime factors") {
  std::mt19937_64 rng(8128);
  for (int trial = 0; trial < 100000; ++trial) {
    const Natural m(static_cast<unsigned long>(1 + rng() % 1'000'000'000'000'000'000ull));
    const Factorization f = factor(m);
    REQUIRE(f.value() == m);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      if (i > 0) REQUIRE(f.factors[i - 1].first < f.factors[i].first);
      // Independent primality check.
      REQUIRE(mpz_probab_prime_p(f.factors[i].first.get_mpz_t(), 30) > 0);
    }
  }
}

TEST_CASE("factor handles inputs above 2^64") {
  const Natural p("18446744073709551557");  // largest prime below 2^64
  const Natural q("4294967291");            // largest prime below 2^32
  const Natural r("1000000000000000000000000000057");
  REQUIRE(is_prime(p));
  REQUIRE(is_prime(q));
  REQUIRE(is_prime(r));
  const Factorization f = factor(p * q * q * 3);
  CHECK(f.value() == p * q * q * 3);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[1] == std::pair<Natural, unsigned>(q, 2));
  CHECK(f.factors[2] == std::pair<Natural, unsigned>(p, 1));
  CHECK(factor(r * q).factors.size() == 2);
  CHECK_FALSE(is_prime(p * q));
  // strong pseudoprime to several small bases
  CHECK_FALSE(is_prime(Natural("3825123056546413051")));
}

TEST_CASE("divisors_in examples and tau") {
  CHECK(divisors_in(Natural(12), Natural(3), Natural(6)) == nats({3, 4, 6}));
  CHECK(divisors_in(Natural(101), Natural(2), Natural(100)).empty());
  CHECK(divisors_in(Natural(6916), Natural(18), Natural(27)) == nats({19, 26}));
  CHECK_THROWS_AS(divisors_in(Natural(12), Natural(6), Natural(3)), std::invalid_argument);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const unsigned long m = 1 + rng() % 2'000'000;
    const auto ds = divisors_in(Natural(m), Natural(1), Natural(m));
    CHECK(Natural(static_cast<unsigned long>(ds.size())) == factor(Natural(m)).divisor_count());
    CHECK(ds == all_divisors(m));
  }
}

TEST_CASE("window_count_below_cuberoot examples") {
  const WindowCount a = window_count_below_cuberoot(Natural(6916), Ratio(1));
  CHECK(a.count == 1);
  CHECK(a.divisors == nats({19}));
  CHECK(a.unresolved == 0);
  const WindowCount b = window_count_below_cuberoot(Natural(27), Ratio(0));
  CHECK(b.divisors == nats({3}));
  const WindowCount c = window_count_below_cuberoot(Natural(8), Ratio(1, 2));
  CHECK(c.divisors == nats({2}));
  CHECK_THROWS_AS(window_count_below_cuberoot(Natural(8), Ratio(-1)), std::domain_error);
}

TEST_CASE("window_count_below_cuberoot against a high-precision oracle") {
  std::mt19937_64 rng(77);
  mpfr_t root, lo, hi;
  mpfr_inits2(512, root, lo, hi, static_cast<mpfr_ptr>(nullptr));
  for (int trial = 0; trial < 3000; ++trial) {
    const unsigned long big_m = 1 + rng() % 50'000'000;
    const Ratio delta(static_cast<long>(rng() % 40), static_cast<long>(1 + rng() % 7));
    const bool symmetric = trial % 2 == 1;
    mpfr_set_ui(root, big_m, MPFR_RNDN);
    mpfr_cbrt(root, root, MPFR_RNDN);
    mpfr_set_q(lo, Ratio(delta).get_mpq_t(), MPFR_RNDN);
    mpfr_add(hi, root, lo, MPFR_RNDN);
    mpfr_sub(lo, root, lo, MPFR_RNDN);
    const mpfr_srcptr upper = symmetric ? hi : root;
    std::vector<Natural> expected;
    for (const Natural& d : all_divisors(big_m)) {
      // exact-cube endpoints are decided by integers; the rest by 512 bits
      const unsigned long dd = d.get_ui();
      const bool cube_hit = dd * dd * dd == big_m;
      const bool ge_lo = cube_hit || mpfr_cmp_ui(lo, dd) <= 0;
      const bool le_hi = cube_hit || mpfr_cmp_ui(upper, dd) >= 0;
      if (ge_lo && le_hi) expected.push_back(d);
    }
    const WindowCount got = window_count_below_cuberoot(
        Natural(big_m), delta, symmetric ? WindowSide::symmetric : WindowSide::below);
    REQUIRE(got.divisors == expected);
  }
  mpfr_clears(root, lo, hi, static_cast<mpfr_ptr>(nullptr));
}

TEST_CASE("window_count_below_cuberoot: wide windows take the factorization path") {
  // width > 2^16 candidates, so the divisors come from factor()
  const Natural big_m = Natural("2305843009213693952") * 3 * 5 * 7 * 11 * 13;  // 2^61 * 15015
  const Ratio delta(2000000);
  const WindowCount w = window_count_below_cuberoot(big_m, delta);
  std::vector<Natural> expected;
  const Natural root = icbrt(big_m);
  for (const Natural& d : divisors_in(big_m, Natural(1), root)) {
    if ((d + delta) * (d + delta) * (d + delta) >= big_m) expected.push_back(d);
  }
  CHECK(w.divisors == expected);
  CHECK(w.divisors == std::vector<Natural>{Natural(30750720), Natural(31457280)});
}

TEST_CASE("window_count_below_cuberoot is monotone in delta") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Natural big_m(static_cast<unsigned long>(1 + rng() % 1'000'000'000));
    std::uint64_t previous = 0;
    for (long num = 0; num <= 60; num += 3) {
      const std::uint64_t c = window_count_below_cuberoot(big_m, Ratio(num, 4)).count;
      CHECK(c >= previous);
      previous = c;
    }
  }
}

TEST_CASE("window_count_exponent examples") {
  const WindowCount a = window_count_exponent(Natural(64), Ratio(1, 2), Ratio(1, 6));
  CHECK(a.divisors == nats({8}));
  const WindowCount b = window_count_exponent(Natural(4096), Ratio(1, 2), Ratio(1, 4));
  CHECK(b.divisors == nats({64}));
  const WindowCount c = window_count_exponent(Natural(720720), Ratio(1, 3), Ratio(1, 5));
  CHECK(c.count == 4);
  CHECK(c.divisors == nats({90, 91, 99, 104}));
  CHECK(c.unresolved == 0);
  CHECK_THROWS_AS(window_count_exponent(Natural(1), Ratio(1, 3), Ratio(1, 5)), std::domain_error);
  CHECK_THROWS_AS(window_count_exponent(Natural(100), Ratio(3, 2), Ratio(1, 5)), std::domain_error);
}

TEST_CASE("window_count_exponent: unresolved comparisons are included and counted") {
  // a cap below the first rung leaves the irrational upper endpoint unresolved
  const WindowCount w = window_count_exponent(Natural(720720), Ratio(1, 3), Ratio(1, 5), 64);
  CHECK(w.count == 4);
  CHECK(w.unresolved == 4);
}

TEST_CASE("window_count_exponent against naive enumeration") {
  struct Exps {
    unsigned long an, ad, bn, bd;
  };
  const Exps cases[] = {{1, 3, 1, 5}, {1, 2, 1, 4}, {1, 3, 1, 10}, {2, 5, 1, 7}, {1, 2, 1, 6}};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const Exps& e = cases[trial % 5];
    const unsigned long m = 2 + rng() % 3'000'000;
    const WindowCount got = window_count_exponent(Natural(m), Ratio(e.an, e.ad), Ratio(e.bn, e.bd));
    REQUIRE(got.divisors == naive_exponent_window(m, e.an, e.ad, e.bn, e.bd));
  }
}

TEST_CASE("window_count_exponent is monotone in beta") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Natural m(static_cast<unsigned long>(2 + rng() % 10'000'000));
    const auto narrow = window_count_exponent(m, Ratio(1, 3), Ratio(1, 10)).count;
    const auto wide = window_count_exponent(m, Ratio(1, 3), Ratio(1, 5)).count;
    CHECK(narrow <= wide);
  }
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(Ratio(1, 3), Ratio(1, 10)) == Regime::theorem);
  CHECK(classify_regime(Ratio(1, 3), Ratio(1, 5)) == Regime::conjecture);
  CHECK(classify_regime(Ratio(1, 2), Ratio(1, 4)) == Regime::conjecture);
  CHECK_THROWS_AS(classify_regime(Ratio(1, 3), Ratio(1, 2)), std::domain_error);
}

TEST_CASE("thm22_scan baselines") {
  const Thm22Scan small = thm22_scan(2, 100, Ratio(1, 2), Ratio(1, 4));
  CHECK(small.max_count >= 1);
  CHECK(small.regime == Regime::conjecture);

  const Thm22Scan s = thm22_scan(2, 10000, Ratio(1, 3), Ratio(1, 10));
  CHECK(s.regime == Regime::theorem);
  CHECK(s.max_count == 2);
  CHECK(s.argmax_m == 6);
  CHECK(s.histogram == std::map<std::uint64_t, std::uint64_t>{{0, 8660}, {1, 1266}, {2, 73}});
  CHECK(s.unresolved == 0);
}

TEST_CASE("thm22_scan: OpenMP kernel, serial reference and sharded merge agree") {
  const Ratio alpha(1, 3), beta(1, 5);
  const Thm22Scan whole = thm22_scan(2, 30000, alpha, beta);
  const Thm22Scan ref = serial::thm22_scan(2, 30000, alpha, beta);
  CHECK(whole.max_count == ref.max_count);
  CHECK(whole.argmax_m == ref.argmax_m);
  CHECK(whole.histogram == ref.histogram);
  CHECK(whole.new_maxima == ref.new_maxima);

  const Thm22Scan merged = merge_scans({thm22_scan(20001, 30000, alpha, beta),
                                        thm22_scan(2, 7000, alpha, beta),
                                        thm22_scan(7001, 20000, alpha, beta)});
  CHECK(merged.m_from == 2);
  CHECK(merged.m_to == 30000);
  CHECK(merged.max_count == whole.max_count);
  CHECK(merged.argmax_m == whole.argmax_m);
  CHECK(merged.histogram == whole.histogram);
  CHECK(merged.new_maxima == whole.new_maxima);

  CHECK_THROWS_AS(merge_scans({thm22_scan(2, 100, alpha, beta), thm22_scan(50, 200, alpha, beta)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(merge_scans({thm22_scan(2, 100, alpha, beta),
                               thm22_scan(101, 200, alpha, Ratio(1, 10))}),
                  std::invalid_argument);
}

TEST_CASE("rep_bound_check examples") {
  const RepBoundReport a = rep_bound_check(Natural(9), Natural(3));
  CHECK(a.ok());
  CHECK(a.delta == 1);
  CHECK(rep_unordered(elements(CubeInterval(Natural(9), Natural(3))), Integer(1729)) == 1);
  CHECK(window_count_below_cuberoot(Natural(6916), Ratio(1)).count == 1);

  const RepBoundReport b = rep_bound_check(Natural(2), Natural(1));
  CHECK(b.ok());
  CHECK(b.sums_checked == 3);

  const RepBoundReport c = rep_bound_check(Natural(10000), Natural(185));
  CHECK(c.ok());
  CHECK(c.representations == 186 * 187 / 2);
  CHECK(c.max_ratio <= 1);

  CHECK_THROWS_AS(rep_bound_check(Natural(10), Natural(0)), std::domain_error);
}

TEST_CASE("rep_bound_check: OpenMP kernel matches the serial reference") {
  for (unsigned long n : {1ul, 5ul, 40ul, 700ul, 3000ul}) {
    for (unsigned long k : {1ul, 7ul, 30ul}) {
      const RepBoundReport par = rep_bound_check(Natural(n), Natural(k));
      const RepBoundReport ser = serial::rep_bound_check(Natural(n), Natural(k));
      CHECK(par.ok() == ser.ok());
      CHECK(par.sums_checked == ser.sums_checked);
      CHECK(par.representations == ser.representations);
      CHECK(par.max_ratio == ser.max_ratio);
      CHECK(par.max_ratio_m == ser.max_ratio_m);
    }
  }
}
