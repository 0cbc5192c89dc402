#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubelens/cube_sets.hpp"
#include "cubelens/exact_arith.hpp"

namespace cubelens {

/// A point (X, Y) on 7X^2 + 114 = Y^2, the index-th of the family
/// X*sqrt(7) + Y = (sqrt(7) + 11)(3 sqrt(7) + 8)^index.
struct PellSolution {
  std::uint64_t index = 0;
  Natural x;
  Natural y;
};

/// u1^3 + u2^3 == u3^3 + u4^3 == sum with u1 + u2 = v - 6, u3 + u4 = v.
struct RamanujanQuadruple {
  Natural u1, u2, u3, u4;
  Natural v;
  Integer start;  // N = (X^2 - Y)/2, negative for index 0
  Natural sum;    // U
};

struct SharpnessReport {
  Natural start;   // N
  Natural spread;  // max(u_i) - N
  double ratio = 0.0;  // spread / sqrt(N)
};

/// Thrown when an exact identity that must hold fails; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool on_pell_curve(const Natural& x, const Natural& y);

/// Multiplies X sqrt(7) + Y by the norm-one unit 3 sqrt(7) + 8:
/// (X, Y) -> (8X + 3Y, 21X + 8Y).
PellSolution next_solution(const PellSolution& sol);

/// Solutions 0 .. count-1 starting from (1, 11), each checked on the curve.
std::vector<PellSolution> pell_family(std::uint64_t count);

RamanujanQuadruple quadruple(const PellSolution& sol);

/// Requires index >= 1 (N > 0); throws std::domain_error otherwise.
SharpnessReport sharpness_report(const PellSolution& sol);

struct FamilyRow {
  PellSolution solution;
  RamanujanQuadruple quad;
  std::optional<SharpnessReport> sharpness;  // absent at index 0
  SidonWitness witness;
};

struct FamilyReport {
  std::vector<FamilyRow> rows;
  bool ratios_decreasing = true;  // over indices >= 1
};

class FamilyCheckError : public std::runtime_error {
 public:
  FamilyCheckError(std::uint64_t index, const std::string& what);
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

/// Builds rows 0 .. count-1 and re-verifies every invariant, including that
/// is_sidon on {u1^3, u2^3, u3^3, u4^3} returns exactly the quadruple.
FamilyReport verify_family(std::uint64_t count);

}  // namespace cubelens
