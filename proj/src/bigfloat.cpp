#include "lgf/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgf {

BigFloat::BigFloat(long precision) {
  mpfr_init2(v_, precision);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const Rat& value, long precision) {
  mpfr_init2(v_, precision);
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Int& value, long precision) {
  mpfr_init2(v_, precision);
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long value, long precision) {
  mpfr_init2(v_, precision);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

namespace {

// Raises a's precision to b's before an in-place operation.
void widen(mpfr_ptr a, mpfr_srcptr b) {
  if (mpfr_get_prec(b) > mpfr_get_prec(a)) mpfr_prec_round(a, mpfr_get_prec(b), MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen(v_, o.v_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(*this);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

double BigFloat::log10_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * std::log10(2.0);
}

BigFloat BigFloat::pow(const Rat& e) const {
  BigFloat r(precision());
  BigFloat num(Int(e.get_num()), precision()), den(Int(e.get_den()), precision());
  BigFloat ex = num / den;
  mpfr_pow(r.v_, v_, ex.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_fixed(int places) const {
  // Scale, truncate toward zero, then place the decimal point.
  BigFloat scaled(precision() + 64);
  mpfr_set(scaled.v_, v_, MPFR_RNDN);
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(places));
  mpfr_mul_z(scaled.v_, scaled.v_, ten.get_mpz_t(), MPFR_RNDN);
  mpz_class q;
  mpfr_get_z(q.get_mpz_t(), scaled.v_, MPFR_RNDZ);
  const bool neg = q < 0 || (q == 0 && sign() < 0);
  if (q < 0) q = -q;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return neg ? "-" + out : out;
}

int common_decimal_places(const std::string& a, const std::string& b) {
  const auto da = a.find('.'), db = b.find('.');
  if (da != db || a.compare(0, da, b, 0, db) != 0) return 0;
  if (da == std::string::npos) return 0;
  int k = 0;
  for (std::size_t i = da + 1; i < a.size() && i < b.size() && a[i] == b[i]; ++i) ++k;
  return k;
}

}  // namespace lgf
