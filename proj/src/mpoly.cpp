#include "lgf/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lgf/error.hpp"

namespace lgf {

MPoly MPoly::constant(int nvars, const Rat& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(nvars, e, 1);
}

MPoly MPoly::monomial(int nvars, const Exponents& e, const Rat& c) {
  MPoly p(nvars);
  p.add_term(e, c);
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat MPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.nvars_ != nvars_) {
    const int nv = std::max(nvars_, o.nvars_);
    *this = extended(nv);
    return *this += o.extended(nv);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.nvars_ != nvars_) {
    const int nv = std::max(nvars_, o.nvars_);
    *this = extended(nv);
    return *this -= o.extended(nv);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nvars_ != b.nvars_) {
    const int nv = std::max(a.nvars_, b.nvars_);
    return a.extended(nv) * b.extended(nv);
  }
  MPoly r(a.nvars_);
  Exponents e(r.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < r.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MPoly pow(const MPoly& p, unsigned e) {
  MPoly r = MPoly::constant(p.nvars(), 1);
  MPoly base = p;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

Rat MPoly::eval(std::span<const Rat> point) const {
  Rat sum = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t *= power(point[i], e[i]);
    sum += t;
  }
  return sum;
}

MPoly MPoly::substitute(int var, const Rat& value) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] = 0;
    r.add_term(f, c * power(value, e[var]));
  }
  return r;
}

MPoly MPoly::extended(int nvars) const {
  if (nvars < nvars_) throw ValidationError("cannot shrink polynomial ring");
  if (nvars == nvars_) return *this;
  MPoly r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f.resize(nvars, 0);
    r.add_term(f, c);
  }
  return r;
}

Rat MPoly::make_primitive() {
  if (terms_.empty()) return 1;
  Int l = 1, g = 0;
  for (const auto& [e, c] : terms_) l = lcm(l, Int(c.get_den()));
  for (const auto& [e, c] : terms_) g = gcd(g, Int(c.get_num() * (l / c.get_den())));
  Rat scale = make_rat(l, g);
  *this *= scale;
  return scale;
}

namespace {

void append_monomial(std::ostringstream& os, const Exponents& e,
                     const std::vector<std::string>& names, bool& wrote) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (wrote) os << "*";
    os << (i < names.size() ? names[i] : "v" + std::to_string(i));
    if (e[i] > 1) os << "^" << e[i];
    wrote = true;
  }
}

}  // namespace

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool is_unit_monomial = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
    bool wrote = false;
    if (!is_unit_monomial || a != 1) {
      os << lgf::to_string(a);
      wrote = true;
    }
    append_monomial(os, e, names, wrote);
  }
  return os.str();
}

RatFunc::RatFunc(MPoly p) : num(std::move(p)), den(MPoly::constant(num.nvars(), 1)) {}

RatFunc::RatFunc(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw ValidationError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  const int nv = std::max(num.nvars(), den.nvars());
  if (num.nvars() < nv) num = num.extended(nv);
  if (den.nvars() < nv) den = den.extended(nv);
  if (num.is_zero()) {
    den = MPoly::constant(nv, 1);
    return;
  }
  if (den.is_constant()) {
    num *= 1 / den.constant_term();
    den = MPoly::constant(nv, 1);
    return;
  }
  if (num.terms().size() == den.terms().size()) {
    Rat ratio = num.terms().rbegin()->second / den.terms().rbegin()->second;
    if (num == den * ratio) {
      num = MPoly::constant(nv, ratio);
      den = MPoly::constant(nv, 1);
      return;
    }
  }
  Rat s = den.make_primitive();
  if (den.terms().rbegin()->second < 0) {
    den *= -1;
    s = -s;
  }
  num *= s;
}

RatFunc RatFunc::derivative(int var) const {
  if (den.is_constant()) return RatFunc(num.derivative(var));
  MPoly n = num.derivative(var) * den - num * den.derivative(var);
  return RatFunc(std::move(n), den * den);
}

Rat RatFunc::eval(std::span<const Rat> point) const {
  Rat d = den.eval(point);
  if (d == 0) throw ValidationError("rational function evaluated at a pole");
  return num.eval(point) / d;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (den == o.den) {
    num += o.num;
  } else {
    num = num * o.den + o.num * den;
    den = den * o.den;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num = num * o.num;
  den = den * o.den;
  normalize();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (num.is_zero()) throw ValidationError("inverse of zero rational function");
  return RatFunc(den, num);
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  if (den.is_constant()) return num.to_string(names);
  return "(" + num.to_string(names) + ")/(" + den.to_string(names) + ")";
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names), nv_(static_cast<int>(names.size())) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("expression parse error at offset " + std::to_string(pos_) + ": " +
                          msg + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r += term();
      } else if (c == '-') {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_' || c == '(';
  }

  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r *= unary();
      } else if (c == '/') {
        ++pos_;
        r *= unary().inverse();
      } else if (starts_primary(c)) {
        r *= unary();
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    RatFunc base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      return RatFunc(pow(base.num, e), pow(base.den, e));
    }
    return base;
  }

  RatFunc primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc(MPoly::constant(nv_, Rat(Int(std::string(text_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("unknown variable '" + name + "'");
      return RatFunc(MPoly::variable(nv_, static_cast<int>(it - names_.begin())));
    }
    fail("expected operand");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  int nv_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const std::vector<std::string>& names) {
  return ExprParser(text, names).parse();
}

MPoly parse_mpoly(std::string_view text, const std::vector<std::string>& names) {
  RatFunc r = parse_ratfunc(text, names);
  if (!r.is_polynomial()) throw ValidationError("expected a polynomial: '" + std::string(text) + "'");
  return r.num;
}

}  // namespace lgf
