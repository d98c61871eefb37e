#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgf/bigint.hpp"

namespace lgf {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Variable names live with the caller; the polynomial only knows indices.
class MPoly {
 public:
  explicit MPoly(int nvars = 0) : nvars_(nvars) {}

  static MPoly constant(int nvars, const Rat& c);
  static MPoly variable(int nvars, int index);
  static MPoly monomial(int nvars, const Exponents& e, const Rat& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (0 if absent).
  Rat constant_term() const;
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  int total_degree() const;
  int degree(int var) const;

  void add_term(const Exponents& e, const Rat& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Rat& c);
  MPoly operator-() const;
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MPoly derivative(int var) const;
  Rat eval(std::span<const Rat> point) const;
  // Substitutes variable `var` by the constant `value`.
  MPoly substitute(int var, const Rat& value) const;
  // Same polynomial viewed in a ring with more variables (appended at the end).
  MPoly extended(int nvars) const;

  // Multiply by the lcm of denominators and divide by the integer content;
  // returns the scale factor applied.
  Rat make_primitive();

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exponents, Rat> terms_;
};

MPoly pow(const MPoly& p, unsigned e);

// Quotient of polynomials. No gcd cancellation is attempted: zero testing only
// ever needs the numerator.
struct RatFunc {
  MPoly num;
  MPoly den;

  RatFunc() : num(0), den(MPoly::constant(0, 1)) {}
  explicit RatFunc(MPoly p);
  RatFunc(MPoly n, MPoly d);

  int nvars() const { return num.nvars(); }
  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.is_constant(); }

  RatFunc derivative(int var) const;
  Rat eval(std::span<const Rat> point) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  RatFunc operator-() const { return RatFunc(-num, den); }
  RatFunc inverse() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void normalize();
};

// Parses an arithmetic expression in the given variables: integers, rationals,
// names, + - * / ^ (nonnegative integer exponents), parentheses, and
// juxtaposition as multiplication.
RatFunc parse_ratfunc(std::string_view text, const std::vector<std::string>& names);
MPoly parse_mpoly(std::string_view text, const std::vector<std::string>& names);

}  // namespace lgf
