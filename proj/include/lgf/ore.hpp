#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/holonomic.hpp"
#include "lgf/mpoly.hpp"

namespace lgf {

// num / prod f_i^{e_i}. Denominator factors are kept primitive with a
// positive leading term, so sums only multiply in the factors that are
// missing on either side. There is no gcd step: zero testing looks at the
// numerator alone.
class FactoredRatFunc {
 public:
  explicit FactoredRatFunc(int nvars = 0) : num_(nvars) {}
  explicit FactoredRatFunc(MPoly num) : num_(std::move(num)) {}
  static FactoredRatFunc constant(int nvars, const Rat& c) { return FactoredRatFunc(MPoly::constant(nvars, c)); }

  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  const MPoly& numerator() const { return num_; }
  const std::vector<std::pair<MPoly, int>>& factors() const { return den_; }
  MPoly denominator() const;
  bool depends_on(int var) const;

  // Multiplies by f^{-e}.
  void divide(MPoly f, int e = 1);

  FactoredRatFunc& operator+=(const FactoredRatFunc& o);
  FactoredRatFunc& operator-=(const FactoredRatFunc& o);
  FactoredRatFunc& operator*=(const FactoredRatFunc& o);
  FactoredRatFunc operator-() const;
  friend FactoredRatFunc operator+(FactoredRatFunc a, const FactoredRatFunc& b) { return a += b; }
  friend FactoredRatFunc operator-(FactoredRatFunc a, const FactoredRatFunc& b) { return a -= b; }
  friend FactoredRatFunc operator*(FactoredRatFunc a, const FactoredRatFunc& b) { return a *= b; }

  FactoredRatFunc derivative(int var) const;
  // Throws ValidationError at a pole.
  Rat eval(std::span<const Rat> point) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  MPoly num_;
  std::vector<std::pair<MPoly, int>> den_;
};

// Element of the Weyl-type Ore algebra over the base variables v_0..v_{k-1}:
// sum of c_a(v) * D^a with the partials written to the right.
class OrePolynomial {
 public:
  explicit OrePolynomial(int nvars = 0) : nvars_(nvars) {}
  static OrePolynomial scalar(FactoredRatFunc c);
  static OrePolynomial scalar(const MPoly& c) { return scalar(FactoredRatFunc(c)); }
  static OrePolynomial partial(int nvars, int var, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, FactoredRatFunc>& terms() const { return terms_; }
  // Total order in the partials (-1 for zero).
  int order() const;
  int order(int var) const;
  // True if var occurs in a coefficient or as a partial.
  bool involves(int var) const;

  void add_term(const Exponents& partials, const FactoredRatFunc& c);

  OrePolynomial& operator+=(const OrePolynomial& o);
  OrePolynomial& operator-=(const OrePolynomial& o);
  OrePolynomial operator-() const;
  friend OrePolynomial operator+(OrePolynomial a, const OrePolynomial& b) { return a += b; }
  friend OrePolynomial operator-(OrePolynomial a, const OrePolynomial& b) { return a -= b; }

  // Partials are printed as D<name>.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exponents, FactoredRatFunc> terms_;
};

// Product in normal form via the Leibniz rule D_v c = c D_v + dc/dv.
OrePolynomial ore_multiply(const OrePolynomial& a, const OrePolynomial& b);
inline OrePolynomial operator*(const OrePolynomial& a, const OrePolynomial& b) { return ore_multiply(a, b); }

// Operator expressions: the scalar syntax of parse_ratfunc plus partials
// written D<name> (or D_<name>). Products are read left to right as operator
// products; division is only allowed by scalars and multiplies by the inverse
// on the right.
OrePolynomial parse_ore(std::string_view text, const std::vector<std::string>& names);

// z-only operators and ODEs, both ways. ode_from_ore clears denominators and
// normalizes; it throws ValidationError if other variables occur.
OrePolynomial ore_from_ode(const LinearODE& ode);
LinearODE ode_from_ore(const OrePolynomial& op);

// f(x_1..x_d, z) = 1 / (L(x, z) * prod_{j in S} sqrt(1 - x_j^2)) with
// L = 1 - (z / C(d,2)) * sum_{m<n} x_m x_n. Variables are x_1..x_d, z.
struct IntegrandSpec {
  int dimension = 0;
  MPoly linear_form;
  std::vector<int> sqrt_indices;  // zero-based x indices

  static IntegrandSpec fcc(int d);
  int nvars() const { return dimension + 1; }
  std::vector<std::string> variable_names() const;
};

// A function g with rational logarithmic derivatives dg/dv = l_v * g.
struct HyperexponentialFunction {
  std::vector<FactoredRatFunc> log_derivative;

  int nvars() const { return static_cast<int>(log_derivative.size()); }
  static HyperexponentialFunction from_integrand(const IntegrandSpec& f);
  // From first-order annihilators a D_v + b, one per variable it depends on;
  // variables without an annihilator are taken as absent. Throws
  // ValidationError if the derivatives are incompatible (d l_u/dv != d l_v/du).
  static HyperexponentialFunction from_annihilators(int nvars, const std::vector<OrePolynomial>& ops);
};

// op(g) = R * g.
struct RationalMultiplier {
  FactoredRatFunc value;
};

RationalMultiplier apply_operator(const OrePolynomial& op, const HyperexponentialFunction& g);
RationalMultiplier apply_operator_to_integrand(const OrePolynomial& op, const IntegrandSpec& f);

// Incremental check of (A + sum_j D_{v_j} B_j)(g) = 0. Parts may be added
// piecewise (the operator is linear), which is what lets certificates stream.
class TelescopingCheck {
 public:
  TelescopingCheck(HyperexponentialFunction g, std::vector<int> integration_vars);

  // Throws ValidationError if the part mentions an integration variable.
  void add_telescoper(const OrePolynomial& part);
  // Throws ValidationError unless var is an integration variable.
  void add_delta(int var, const OrePolynomial& part);

  const FactoredRatFunc& residual() const { return residual_; }
  bool holds() const { return residual_.is_zero(); }

 private:
  HyperexponentialFunction g_;
  std::vector<int> vars_;
  FactoredRatFunc residual_;
};

// The integration variables are those of the delta parts.
bool certify_telescoper(const OrePolynomial& telescoper, const std::vector<std::pair<int, OrePolynomial>>& deltas,
                        const IntegrandSpec& f);
bool certify_telescoper(const OrePolynomial& telescoper, const std::vector<std::pair<int, OrePolynomial>>& deltas,
                        const HyperexponentialFunction& g);

// Truncated Taylor expansion around a point in the local variables t = v - p,
// keeping total degree <= order.
class LocalSeries {
 public:
  LocalSeries(int nvars, int order) : nvars_(nvars), order_(order) {}
  static LocalSeries constant(int nvars, int order, const Rat& c);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  Rat coefficient(const Exponents& e) const;
  Rat constant_term() const { return coefficient(Exponents(nvars_, 0)); }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  void add_term(const Exponents& e, const Rat& c);

  LocalSeries& operator+=(const LocalSeries& o);
  LocalSeries& operator*=(const Rat& c);
  friend LocalSeries operator+(LocalSeries a, const LocalSeries& b) { return a += b; }
  friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b);
  friend LocalSeries operator*(LocalSeries a, const Rat& c) { return a *= c; }
  // Order drops by one.
  LocalSeries derivative(int var) const;
  // Requires a nonzero constant term.
  LocalSeries inverse() const;
  // exp of a series without constant term.
  LocalSeries exp() const;
  // (1 + s)^r for a series s without constant term.
  LocalSeries binomial_power(const Rat& r) const;

 private:
  int nvars_;
  int order_;
  std::map<Exponents, Rat> terms_;
};

LocalSeries expand_at(const MPoly& p, std::span<const Rat> point, int order);
LocalSeries expand_at(const FactoredRatFunc& r, std::span<const Rat> point, int order);
// op applied to the function whose expansion is h.
LocalSeries apply_operator(const OrePolynomial& op, const LocalSeries& h, std::span<const Rat> point);
// f / f(p) and g / g(p) around p.
LocalSeries expand_at(const IntegrandSpec& f, std::span<const Rat> point, int order);
LocalSeries expand_at(const HyperexponentialFunction& g, std::span<const Rat> point, int order);

// Random rational points (small heights) where none of the given functions
// has a pole and the integrand's square roots and L are nonsingular.
std::vector<std::vector<Rat>> random_points(int nvars, int count, std::uint64_t seed,
                                            const std::vector<const FactoredRatFunc*>& avoid,
                                            const IntegrandSpec* f = nullptr);

// Numeric spot check of a certificate: (A + sum D_v B_v)(g) evaluated at
// `count` random points through local expansions (no symbolic operator
// products involved).
bool spot_check_certificate(const OrePolynomial& telescoper,
                            const std::vector<std::pair<int, OrePolynomial>>& deltas, const IntegrandSpec& f,
                            int count = 5, std::uint64_t seed = 1);
bool spot_check_certificate(const OrePolynomial& telescoper,
                            const std::vector<std::pair<int, OrePolynomial>>& deltas,
                            const HyperexponentialFunction& g, int count = 5, std::uint64_t seed = 1);

// Numeric spot check of sum_i c_i * G_i == rhs, applying both sides to a
// random exp-times-polynomial test function at `count` random points.
bool spot_check_combination(const std::vector<std::pair<OrePolynomial, OrePolynomial>>& cofactor_pairs,
                            const OrePolynomial& rhs, int count = 5, std::uint64_t seed = 1);

}  // namespace lgf
