#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgf/bigint.hpp"

namespace lgf {

// Dense univariate polynomial with integer coefficients, ascending powers.
// The coefficient vector never carries trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coefficients);
  IntPoly(std::initializer_list<long> coefficients);

  static IntPoly constant(const Int& c);
  static IntPoly monomial(const Int& c, int degree);
  // x + a
  static IntPoly linear(const Int& a);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Int>& coefficients() const { return coeffs_; }
  Int coeff(int i) const;
  const Int& leading() const { return coeffs_.back(); }
  int valuation() const;

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

  IntPoly derivative() const;
  // p(x + a)
  IntPoly shifted(const Int& a) const;
  Int content() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Int& c);
  IntPoly operator-() const;
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Int& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Exact division by a nonzero integer; throws if inexact.
  IntPoly divided_exactly(const Int& c) const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

IntPoly pow(const IntPoly& p, unsigned e);

// x (x-1) ... (x-k+1) composed with x -> x + a.
IntPoly falling_factorial(int k, const Int& a = 0);

// Exact quotient a / b over Z[x]; throws ValidationError if b does not divide a.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

// Primitive gcd over Z[x] with positive leading coefficient; gcd(0,0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

}  // namespace lgf
