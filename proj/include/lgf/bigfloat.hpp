#pragma once

#include <mpfr.h>

#include <string>

#include "lgf/bigint.hpp"

namespace lgf {

// MPFR value with its own working precision (bits). Results of binary
// operations take the larger precision of the operands; rounding is to nearest.
class BigFloat {
 public:
  explicit BigFloat(long precision = 128);
  BigFloat(const Rat& value, long precision);
  BigFloat(const Int& value, long precision);
  BigFloat(long value, long precision);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  long precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat operator-() const;
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal log of |x| (-infinity for zero, as a large negative double).
  double log10_abs() const;
  // x^e for a rational exponent.
  BigFloat pow(const Rat& e) const;
  BigFloat abs() const;

  // Fixed-point decimal with the given number of places, truncated (not
  // rounded) so that two values agreeing to k places print the same prefix.
  std::string to_fixed(int places) const;

 private:
  mpfr_t v_;
};

// Length of the common prefix of two decimal strings, counted in digits after
// the decimal point (0 if they differ before it).
int common_decimal_places(const std::string& a, const std::string& b);

}  // namespace lgf
