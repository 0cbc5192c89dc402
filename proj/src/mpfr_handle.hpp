#pragma once

#include <mpfr.h>

namespace cubelens::detail {

// Owns one mpfr_t for the lifetime of a scope.
class MpfrHandle {
 public:
  explicit MpfrHandle(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~MpfrHandle() { mpfr_clear(value_); }
  MpfrHandle(const MpfrHandle&) = delete;
  MpfrHandle& operator=(const MpfrHandle&) = delete;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace cubelens::detail
