#include "lgf/ode_ops.hpp"

#include <climits>

namespace lgf {

namespace {

// Range of j - i over nonzero terms a_{j,i} z^i D^j.
std::pair<int, int> shift_range(const LinearODE& ode) {
  int lo = INT_MAX, hi = INT_MIN;
  for (int j = 0; j <= ode.order(); ++j) {
    const auto& a = ode.coefficient(j).coefficients();
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (a[i] == 0) continue;
      lo = std::min(lo, j - i);
      hi = std::max(hi, j - i);
    }
  }
  return {lo, hi};
}

}  // namespace

int recurrence_offset(const LinearODE& ode) {
  if (ode.is_zero()) return 0;
  return std::min(shift_range(ode).first, 0);
}

LinearRecurrence ode_to_recurrence(const LinearODE& ode) {
  if (ode.is_zero()) return LinearRecurrence();
  auto [lo, hi] = shift_range(ode);
  const int base = std::min(lo, 0);
  // Coefficient of z^k in ode(sum c_m z^m) is sum a_{j,i} (k-i+j)_j c_{k-i+j};
  // with n = k + base the term a_{j,i} lands at shift t = j - i - base.
  std::vector<IntPoly> q(hi - base + 1);
  for (int j = 0; j <= ode.order(); ++j) {
    const auto& a = ode.coefficient(j).coefficients();
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (a[i] == 0) continue;
      const int t = j - i - base;
      q[t] += falling_factorial(j, Int(t)) * a[i];
    }
  }
  LinearRecurrence rec(std::move(q));
  rec.normalize();
  return rec;
}

LinearODE quotient_closure(const LinearODE& ode) {
  // D^j (1-z) = (1-z) D^j - j D^{j-1}
  const int r = ode.order();
  std::vector<IntPoly> b(r + 1);
  const IntPoly one_minus_z{1, -1};
  for (int j = 0; j <= r; ++j) {
    b[j] = ode.coefficient(j) * one_minus_z;
    if (j + 1 <= r) b[j] -= ode.coefficient(j + 1) * Int(j + 1);
  }
  LinearODE out(std::move(b));
  out.normalize();
  return out;
}

IntPoly indicial_polynomial(const LinearODE& ode) {
  // a_j(z) D^j z^lambda contributes lowcoef(a_j) (lambda)_j z^{lambda - j + val(a_j)}.
  int mu = INT_MAX;
  for (int j = 0; j <= ode.order(); ++j) {
    const IntPoly& a = ode.coefficient(j);
    if (!a.is_zero()) mu = std::min(mu, a.valuation() - j);
  }
  IntPoly ind;
  for (int j = 0; j <= ode.order(); ++j) {
    const IntPoly& a = ode.coefficient(j);
    if (a.is_zero() || a.valuation() - j != mu) continue;
    ind += falling_factorial(j) * a.coeff(a.valuation());
  }
  if (ind.is_zero()) return ind;
  Int c = ind.content();
  if (ind.leading() < 0) c = -c;
  return ind.divided_exactly(c);
}

LinearRecurrence primitive_part(const LinearRecurrence& rec) {
  IntPoly g;
  for (const auto& q : rec.coefficients()) g = gcd(g, q);
  if (g.is_zero() || g.degree() == 0) return rec;
  std::vector<IntPoly> q;
  for (const auto& c : rec.coefficients()) q.push_back(c.is_zero() ? c : exact_quotient(c, g));
  LinearRecurrence out(std::move(q));
  out.normalize();
  return out;
}

}  // namespace lgf
