#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/poly.hpp"
#include "lgf/series.hpp"

namespace lgf {

// sum_j c_j(t) * E^j with integer polynomial coefficients c_0..c_r, where E is
// the shift (recurrences) or d/dz (ODEs).
class PolyCoeffOperator {
 public:
  PolyCoeffOperator() = default;
  explicit PolyCoeffOperator(std::vector<IntPoly> coefficients);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Maximal coefficient degree.
  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<IntPoly>& coefficients() const { return coeffs_; }
  const IntPoly& coefficient(int j) const { return coeffs_.at(j); }
  const IntPoly& leading() const { return coeffs_.back(); }

  // Divides by the integer content and makes the leading coefficient of the
  // top-order polynomial positive. Idempotent.
  void normalize();
  bool is_normalized() const;

  friend bool operator==(const PolyCoeffOperator& a, const PolyCoeffOperator& b) {
    return a.coeffs_ == b.coeffs_;
  }

 protected:
  void trim();
  std::vector<IntPoly> coeffs_;
};

// sum_{i=0}^r q_i(n) f(n+i) = 0.
class LinearRecurrence : public PolyCoeffOperator {
 public:
  using PolyCoeffOperator::PolyCoeffOperator;
  std::string to_string(const std::string& seq = "f", const std::string& var = "n") const;
};

// sum_{j=0}^r a_j(z) (d/dz)^j P(z) = 0.
class LinearODE : public PolyCoeffOperator {
 public:
  using PolyCoeffOperator::PolyCoeffOperator;
  std::string to_string(const std::string& fn = "P", const std::string& var = "z") const;
};

// Builds an operator from coefficient expressions such as "(z-1)*(z+2)^2*z^3",
// clearing any common rational denominator. Throws ValidationError if an
// expression is not a polynomial in var.
std::vector<IntPoly> polys_from_expressions(const std::vector<std::string>& exprs, const std::string& var);
LinearODE ode_from_expressions(const std::vector<std::string>& exprs, const std::string& var = "z");
LinearRecurrence recurrence_from_expressions(const std::vector<std::string>& exprs, const std::string& var = "n");

// Exchange format: "# lgf-op kind=<ode|rec> order=<r> degree=<D>" followed by
// one line per coefficient polynomial (ascending powers, space-separated).
void write_operator(std::ostream& os, const LinearODE& op);
void write_operator(std::ostream& os, const LinearRecurrence& op);
struct OperatorHeader {
  std::string kind;
  int order = -1;
  int degree = -1;
  std::string extra;  // remaining header fields, verbatim
};
OperatorHeader read_operator_header(std::istream& is);
LinearODE read_ode(std::istream& is);
LinearRecurrence read_recurrence(std::istream& is);
LinearODE read_ode_file(const std::string& path);

// Residuals sum_i q_i(n) f(n+i) for n = 0 .. size-1-order.
std::vector<Rat> apply_recurrence(const LinearRecurrence& rec, const std::vector<Rat>& values);

// Coefficients of ode(s) that are fully determined by the truncation:
// indices 0 .. size-1-order. Throws InsufficientDataError if there are none.
ExactSeries apply_ode_to_series(const LinearODE& ode, const ExactSeries& s);

bool all_zero(const std::vector<Rat>& v);

}  // namespace lgf
