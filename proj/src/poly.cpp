#include "lgf/poly.hpp"

#include <algorithm>
#include <sstream>

#include "lgf/error.hpp"

namespace lgf {

Rat parse_rat(const std::string& text) {
  Rat r;
  if (r.set_str(text, 10) != 0) throw ValidationError("bad rational: '" + text + "'");
  r.canonicalize();
  return r;
}

IntPoly::IntPoly(std::vector<Int> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

IntPoly::IntPoly(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const Int& c) { return IntPoly(std::vector<Int>{c}); }

IntPoly IntPoly::monomial(const Int& c, int degree) {
  std::vector<Int> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::linear(const Int& a) { return IntPoly(std::vector<Int>{a, 1}); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[i];
}

int IntPoly::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return static_cast<int>(i);
  return -1;
}

Int IntPoly::eval(const Int& x) const {
  Int r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

Rat IntPoly::eval(const Rat& x) const {
  // Horner over the common denominator keeps everything integral until the end.
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  Int acc = 0, dpow = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * num + *it * dpow;
    dpow *= den;
  }
  // acc / den^deg
  Int d = 1;
  for (int i = 0; i < degree(); ++i) d *= den;
  return make_rat(acc, d);
}

std::uint64_t IntPoly::eval_mod(std::uint64_t x, std::uint64_t p) const {
  unsigned __int128 r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    Int c = *it % Int(static_cast<unsigned long>(p));
    if (c < 0) c += static_cast<unsigned long>(p);
    r = (r * x + c.get_ui()) % p;
  }
  return static_cast<std::uint64_t>(r);
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Int> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::shifted(const Int& a) const {
  // Horner with (x + a)
  IntPoly r;
  const IntPoly lin = linear(a);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * lin;
    r += constant(*it);
  }
  return r;
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Int& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::divided_exactly(const Int& c) const {
  IntPoly r = *this;
  for (auto& x : r.coeffs_) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
      throw ValidationError("inexact polynomial division by " + c.get_str());
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly r = IntPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

IntPoly falling_factorial(int k, const Int& a) {
  IntPoly r = IntPoly::constant(1);
  for (int i = 0; i < k; ++i) r = r * IntPoly::linear(a - i);
  return r;
}

namespace {

// Pseudo-remainder of a by b (Knuth's algorithm R).
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  const Int& lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    Int la = a.leading();
    a *= lb;
    a -= IntPoly::monomial(la, shift) * b;
  }
  return a;
}

IntPoly primitive(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int c = p.content();
  if (p.leading() < 0) c = -c;
  return p.divided_exactly(c);
}

}  // namespace

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw ValidationError("division by zero polynomial");
  if (a.is_zero()) return {};
  std::vector<Int> rem = a.coefficients();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) throw ValidationError("polynomial does not divide");
  std::vector<Int> q(dq + 1);
  for (int i = dq; i >= 0; --i) {
    const Int& top = rem[i + db];
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t()))
      throw ValidationError("polynomial does not divide over Z");
    Int t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    q[i] = t;
    for (int j = 0; j <= db; ++j) rem[i + j] -= t * b.coefficients()[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw ValidationError("polynomial does not divide");
  return IntPoly(std::move(q));
}

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  if (a0.is_zero()) return primitive(b0);
  if (b0.is_zero()) return primitive(a0);
  IntPoly a = primitive(a0), b = primitive(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = b;
    b = primitive(r);
  }
  return primitive(a);
}

}  // namespace lgf
