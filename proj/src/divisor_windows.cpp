#include "cubelens/divisor_windows.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "cubelens/cube_sets.hpp"

namespace cubelens {

namespace {

// Windows narrower than this are scanned candidate by candidate; wider ones
// go through the factorization.
constexpr unsigned long kScanLimit = 1ul << 16;
constexpr std::uint64_t kScanBlock = 1ull << 18;

std::vector<Natural> divisors_between(const Natural& m, const Natural& lo, const Natural& hi) {
  std::vector<Natural> out;
  if (hi < lo) return out;
  const Natural width = hi - lo;
  if (width >= kScanLimit) return divisors_in(m, lo, hi);
  if (m.fits_ulong_p() && hi.fits_ulong_p()) {
    const unsigned long mm = m.get_ui();
    for (unsigned long d = lo.get_ui(), end = hi.get_ui(); d <= end; ++d) {
      if (mm % d == 0) out.emplace_back(d);
    }
    return out;
  }
  for (Natural d = lo; d <= hi; ++d) {
    if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) out.push_back(d);
  }
  return out;
}

Natural cube(const Natural& x) { return x * x * x; }

void require_unit_interval(const Ratio& x, const char* name) {
  if (x <= 0 || x >= 1) {
    throw std::domain_error(std::string(name) + " must lie strictly between 0 and 1");
  }
}

}  // namespace

WindowCount window_count_below_cuberoot(const Natural& big_m, const Ratio& delta, WindowSide side) {
  if (big_m < 1) throw std::domain_error("window_count_below_cuberoot: M must be at least 1");
  if (delta < 0) throw std::domain_error("window_count_below_cuberoot: delta must be >= 0");

  const Natural root = icbrt(big_m);
  const Natural& num = delta.get_num();
  const Natural& den = delta.get_den();
  const Natural scaled_m = big_m * cube(den);
  const Natural whole = num / den;

  // d >= M^(1/3) - delta  <=>  (d*den + num)^3 >= M*den^3
  auto above_lower = [&](const Natural& d) { return cube(d * den + num) >= scaled_m; };
  // d <= M^(1/3) + delta  <=>  d*den - num <= 0 or (d*den - num)^3 <= M*den^3
  auto below_upper = [&](const Natural& d) {
    if (side == WindowSide::below) return cube(d) <= big_m;
    const Natural t = d * den - num;
    return t <= 0 || cube(t) <= scaled_m;
  };

  Natural cand_lo = root - whole - 1;
  if (cand_lo < 1) cand_lo = 1;
  const Natural cand_hi = side == WindowSide::below ? root : root + whole + 1;

  WindowCount out;
  out.m = big_m;
  out.lo_desc = to_string(big_m) + "^(1/3) - " + to_string(delta);
  out.hi_desc = side == WindowSide::below ? to_string(big_m) + "^(1/3)"
                                          : to_string(big_m) + "^(1/3) + " + to_string(delta);
  for (Natural& d : divisors_between(big_m, cand_lo, cand_hi)) {
    if (above_lower(d) && below_upper(d)) out.divisors.push_back(std::move(d));
  }
  out.count = out.divisors.size();
  return out;
}

WindowCount window_count_exponent(const Natural& m, const Ratio& alpha, const Ratio& beta,
                                  std::size_t precision_cap) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  if (m < 2) throw std::domain_error("window_count_exponent: m must be at least 2");

  const auto [p, q] = exponent_parts(alpha);
  const Natural first = rational_power_bounds(m, alpha).hi;  // ceil(m^alpha)
  const Natural last = power_sum_floor_upper(m, alpha, beta);

  WindowCount out;
  out.m = m;
  out.lo_desc = to_string(m) + "^(" + to_string(alpha) + ")";
  out.hi_desc = out.lo_desc + " + " + to_string(m) + "^(" + to_string(beta) + ")";
  for (Natural& d : divisors_between(m, first, last)) {
    if (pow_cmp(d, m, p, q) == std::strong_ordering::less) continue;
    const auto upper = cmp_against_power_sum(d, m, alpha, beta, precision_cap);
    if (!upper) {
      ++out.unresolved;
    } else if (*upper == std::strong_ordering::greater) {
      continue;
    }
    out.divisors.push_back(std::move(d));
  }
  out.count = out.divisors.size();
  return out;
}

Regime classify_regime(const Ratio& alpha, const Ratio& beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  if (beta < alpha * alpha) return Regime::theorem;
  if (beta < alpha) return Regime::conjecture;
  throw std::domain_error("beta must be smaller than alpha");
}

const char* regime_name(Regime regime) {
  return regime == Regime::theorem ? "theorem" : "conjecture";
}

namespace {

Thm22Scan empty_scan(std::uint64_t m_from, std::uint64_t m_to, const Ratio& alpha,
                     const Ratio& beta) {
  if (m_from < 2) throw std::domain_error("thm22_scan: m_from must be at least 2");
  if (m_to < m_from) throw std::invalid_argument("thm22_scan: empty range");
  if (m_to == std::numeric_limits<std::uint64_t>::max()) {
    throw std::invalid_argument("thm22_scan: m_to too large");
  }
  Thm22Scan out;
  out.m_from = m_from;
  out.m_to = m_to;
  out.alpha = alpha;
  out.beta = beta;
  out.regime = classify_regime(alpha, beta);
  out.argmax_m = m_from;
  return out;
}

void fold(Thm22Scan& scan, std::uint64_t m, std::uint64_t count, std::uint64_t unresolved) {
  ++scan.histogram[count];
  scan.unresolved += unresolved;
  if (count > scan.max_count) {
    scan.max_count = count;
    scan.argmax_m = m;
    scan.new_maxima.push_back({m, count});
  }
}

}  // namespace

Thm22Scan thm22_scan(std::uint64_t m_from, std::uint64_t m_to, const Ratio& alpha,
                     const Ratio& beta, std::size_t precision_cap) {
  Thm22Scan out = empty_scan(m_from, m_to, alpha, beta);
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> unresolved;
  for (std::uint64_t block = m_from; block <= m_to;) {
    const std::uint64_t len = std::min<std::uint64_t>(kScanBlock, m_to - block + 1);
    counts.assign(len, 0);
    unresolved.assign(len, 0);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(len); ++i) {
      const Natural m(static_cast<unsigned long>(block + static_cast<std::uint64_t>(i)));
      const WindowCount w = window_count_exponent(m, alpha, beta, precision_cap);
      counts[i] = static_cast<std::uint32_t>(w.count);
      unresolved[i] = static_cast<std::uint32_t>(w.unresolved);
    }
    for (std::uint64_t i = 0; i < len; ++i) fold(out, block + i, counts[i], unresolved[i]);
    block += len;
  }
  return out;
}

Thm22Scan merge_scans(std::vector<Thm22Scan> parts) {
  if (parts.empty()) throw std::invalid_argument("merge_scans: nothing to merge");
  std::sort(parts.begin(), parts.end(),
            [](const Thm22Scan& a, const Thm22Scan& b) { return a.m_from < b.m_from; });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].alpha != parts[0].alpha || parts[i].beta != parts[0].beta) {
      throw std::invalid_argument("merge_scans: parts use different exponents");
    }
    if (i > 0 && parts[i].m_from <= parts[i - 1].m_to) {
      throw std::invalid_argument("merge_scans: overlapping ranges");
    }
  }

  Thm22Scan out = empty_scan(parts.front().m_from, parts.back().m_to, parts[0].alpha,
                             parts[0].beta);
  for (const Thm22Scan& part : parts) {
    for (const auto& [count, freq] : part.histogram) out.histogram[count] += freq;
    out.unresolved += part.unresolved;
    for (const ScanMaximum& record : part.new_maxima) {
      if (record.count > out.max_count) {
        out.max_count = record.count;
        out.argmax_m = record.m;
        out.new_maxima.push_back(record);
      }
    }
  }
  return out;
}

namespace {

struct GroupResult {
  Natural m;
  std::uint64_t reps = 0;
  std::uint64_t window = 0;
  bool reconstruction_ok = true;
  bool below_root_ok = true;
};

void check_group(const Natural& start, const Ratio& delta, const Natural& m,
                 std::span<const PairSum> group, GroupResult& out) {
  const Natural big_m = 4 * m;
  const WindowCount w = window_count_below_cuberoot(big_m, delta);
  out.m = m;
  out.reps = group.size();
  out.window = w.count;
  for (const PairSum& pair : group) {
    const Natural u = start + pair.i;
    const Natural v = start + pair.j;
    const Natural d = u + v;
    if (cube(d) > big_m) out.below_root_ok = false;
    // 4m = d (d^2 + 3 (u - v)^2), so (4m/d - d^2) / 3 must be the square (u - v)^2.
    bool ok = std::binary_search(w.divisors.begin(), w.divisors.end(), d) &&
              mpz_divisible_p(big_m.get_mpz_t(), d.get_mpz_t());
    if (ok) {
      const Natural rest = big_m / d - d * d;
      const Natural gap = v - u;
      ok = rest >= 0 && mpz_divisible_ui_p(rest.get_mpz_t(), 3) &&
           is_perfect_square(rest / 3) && rest / 3 == gap * gap;
    }
    if (!ok) out.reconstruction_ok = false;
  }
}

RepBoundReport summarize(const Natural& start, const Natural& length, const Ratio& delta,
                         std::vector<GroupResult>& groups) {
  std::sort(groups.begin(), groups.end(),
            [](const GroupResult& a, const GroupResult& b) { return a.m < b.m; });
  RepBoundReport out;
  out.start = start;
  out.length = length;
  out.delta = delta;
  out.max_ratio = 0;
  bool have_ratio = false;
  for (const GroupResult& g : groups) {
    ++out.sums_checked;
    out.representations += g.reps;
    if (g.reps > g.window) out.violations.push_back({g.m, g.reps, g.window});
    if (!g.reconstruction_ok) out.reconstruction_failures.push_back(g.m);
    if (!g.below_root_ok) out.above_root_failures.push_back(g.m);
    if (g.window == 0) continue;
    const Ratio ratio(Natural(static_cast<unsigned long>(g.reps)),
                      Natural(static_cast<unsigned long>(g.window)));
    if (!have_ratio || ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.max_ratio.canonicalize();
      out.max_ratio_m = g.m;
      have_ratio = true;
    }
  }
  return out;
}

Ratio window_delta(const Natural& start, const Natural& length) {
  if (start < 1) throw std::domain_error("rep_bound_check: N must be at least 1");
  if (length < 1) throw std::domain_error("rep_bound_check: k must be at least 1");
  Ratio delta(length * length, start);
  delta.canonicalize();
  return delta;
}

}  // namespace

RepBoundReport rep_bound_check(const Natural& start, const Natural& length) {
  const Ratio delta = window_delta(start, length);
  const std::vector<Natural> set = elements(CubeInterval(start, length));
  const std::vector<PairSum> sums = sorted_pair_sums(set);

  std::vector<std::size_t> group_starts;
  for (std::size_t g = 0; g < sums.size(); ++g) {
    if (g == 0 || sums[g].sum != sums[g - 1].sum) group_starts.push_back(g);
  }
  group_starts.push_back(sums.size());

  std::vector<GroupResult> groups(group_starts.size() - 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(groups.size()); ++g) {
    const std::size_t b = group_starts[g];
    const std::size_t e = group_starts[g + 1];
    check_group(start, delta, sums[b].sum, std::span(sums).subspan(b, e - b), groups[g]);
  }
  return summarize(start, length, delta, groups);
}

namespace serial {

RepBoundReport rep_bound_check(const Natural& start, const Natural& length) {
  const Ratio delta = window_delta(start, length);
  const std::vector<Natural> set = elements(CubeInterval(start, length));
  std::map<Natural, std::vector<PairSum>> by_sum;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i; j < set.size(); ++j) {
      by_sum[set[i] + set[j]].push_back(
          {Natural(), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::vector<GroupResult> groups;
  groups.reserve(by_sum.size());
  for (const auto& [m, pairs] : by_sum) {
    check_group(start, delta, m, pairs, groups.emplace_back());
  }
  return summarize(start, length, delta, groups);
}

}  // namespace serial

}  // namespace cubelens
