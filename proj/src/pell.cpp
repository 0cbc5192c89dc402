#include "cubelens/pell.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "mpfr_handle.hpp"

namespace cubelens {

namespace {

Natural cube(const Natural& x) { return x * x * x; }

void check_quadruple(const RamanujanQuadruple& q) {
  const Natural lhs = cube(q.u1) + cube(q.u2);
  const Natural rhs = cube(q.u3) + cube(q.u4);
  if (lhs != rhs || lhs != q.sum) throw InternalError("quadruple: cube sums differ");
  if (4 * q.sum != (q.v - 6) * q.v * (q.v + 9)) {
    throw InternalError("quadruple: 4U != (v-6) v (v+9)");
  }
  if (q.u1 + q.u2 + 6 != q.v || q.u3 + q.u4 != q.v) {
    throw InternalError("quadruple: pair sums do not match v");
  }
  if (q.u1 > q.u2 || q.u3 > q.u4 || (q.u1 == q.u3 && q.u2 == q.u4)) {
    throw InternalError("quadruple: pairs not ordered or not distinct");
  }
}

}  // namespace

bool on_pell_curve(const Natural& x, const Natural& y) { return 7 * x * x + 114 == y * y; }

PellSolution next_solution(const PellSolution& sol) {
  return {sol.index + 1, 8 * sol.x + 3 * sol.y, 21 * sol.x + 8 * sol.y};
}

std::vector<PellSolution> pell_family(std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("pell_family: count must be positive");
  std::vector<PellSolution> out;
  out.reserve(count);
  out.push_back({0, Natural(1), Natural(11)});
  while (out.size() < count) out.push_back(next_solution(out.back()));
  for (const PellSolution& s : out) {
    if (!on_pell_curve(s.x, s.y)) {
      throw InternalError("pell_family: solution " + std::to_string(s.index) + " is off the curve");
    }
  }
  return out;
}

RamanujanQuadruple quadruple(const PellSolution& sol) {
  if (!on_pell_curve(sol.x, sol.y)) throw std::invalid_argument("quadruple: not on 7X^2+114=Y^2");
  const Natural x2 = sol.x * sol.x;
  const Integer minus_y = x2 - sol.y;
  if (mpz_odd_p(minus_y.get_mpz_t()) || mpz_odd_p(Natural(x2 - sol.x).get_mpz_t())) {
    throw InternalError("quadruple: parity failure");
  }
  RamanujanQuadruple q;
  q.start = minus_y / 2;
  q.u1 = q.start + 6;
  q.u2 = (x2 + sol.y) / 2 + 6;
  q.u3 = (x2 - sol.x) / 2 + 9;
  q.u4 = (x2 + sol.x) / 2 + 9;
  q.v = x2 + 18;
  q.sum = cube(q.u1) + cube(q.u2);
  check_quadruple(q);
  return q;
}

SharpnessReport sharpness_report(const PellSolution& sol) {
  if (sol.index == 0) throw std::domain_error("sharpness_report: index 0 has negative N");
  const RamanujanQuadruple q = quadruple(sol);
  if (q.start <= 0) throw std::domain_error("sharpness_report: N must be positive");
  const std::array<const Natural*, 4> us{&q.u1, &q.u2, &q.u3, &q.u4};
  const Natural& lowest = **std::min_element(us.begin(), us.end(),
                                              [](auto* a, auto* b) { return *a < *b; });
  const Natural& highest = **std::max_element(us.begin(), us.end(),
                                               [](auto* a, auto* b) { return *a < *b; });
  if (lowest < q.start) throw InternalError("sharpness_report: some u_i lies below N");

  SharpnessReport out;
  out.start = q.start;
  out.spread = highest - q.start;
  detail::MpfrHandle root(128), spread(128);
  mpfr_set_z(root.get(), q.start.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  mpfr_set_z(spread.get(), out.spread.get_mpz_t(), MPFR_RNDN);
  mpfr_div(spread.get(), spread.get(), root.get(), MPFR_RNDN);
  out.ratio = mpfr_get_d(spread.get(), MPFR_RNDN);
  return out;
}

FamilyCheckError::FamilyCheckError(std::uint64_t index, const std::string& what)
    : std::runtime_error("family check failed at k=" + std::to_string(index) + ": " + what),
      index_(index) {}

FamilyReport verify_family(std::uint64_t count) {
  FamilyReport report;
  for (const PellSolution& sol : pell_family(count)) {
    FamilyRow row{sol, {}, std::nullopt, {}};
    try {
      row.quad = quadruple(sol);
      if (sol.index >= 1) row.sharpness = sharpness_report(sol);
    } catch (const std::exception& e) {
      throw FamilyCheckError(sol.index, e.what());
    }

    std::vector<Integer> cubes{cube(row.quad.u1), cube(row.quad.u2), cube(row.quad.u3),
                               cube(row.quad.u4)};
    std::sort(cubes.begin(), cubes.end());
    const SidonResult sidon = is_sidon(cubes);
    const SidonWitness expected{cube(row.quad.u1), cube(row.quad.u2), cube(row.quad.u3),
                                cube(row.quad.u4)};
    if (sidon.is_sidon || !sidon.witness || !(*sidon.witness == expected)) {
      throw FamilyCheckError(sol.index, "is_sidon did not return the quadruple as witness");
    }
    row.witness = *sidon.witness;

    if (row.sharpness && !report.rows.empty() && report.rows.back().sharpness &&
        !(row.sharpness->ratio < report.rows.back().sharpness->ratio)) {
      report.ratios_decreasing = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace cubelens
