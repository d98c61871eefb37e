#include "lgf/ore.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>

#include "lgf/error.hpp"

namespace lgf {

namespace {

// Makes f primitive with a positive leading term; returns s with f_new = s * f_old.
Rat normalize_factor(MPoly& f) {
  Rat s = f.make_primitive();
  if (f.terms().rbegin()->second < 0) {
    f *= Rat(-1);
    s = -s;
  }
  return s;
}

MPoly pow_or_one(const MPoly& f, int e) {
  return e == 0 ? MPoly::constant(f.nvars(), 1) : pow(f, static_cast<unsigned>(e));
}

int total(const Exponents& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// FactoredRatFunc

MPoly FactoredRatFunc::denominator() const {
  MPoly d = MPoly::constant(nvars(), 1);
  for (const auto& [f, e] : den_) d = d * pow_or_one(f, e);
  return d;
}

bool FactoredRatFunc::depends_on(int var) const {
  if (num_.degree(var) > 0) return true;
  for (const auto& [f, e] : den_)
    if (f.degree(var) > 0) return true;
  return false;
}

void FactoredRatFunc::divide(MPoly f, int e) {
  if (e < 0) throw ValidationError("negative factor exponent");
  if (f.is_zero()) throw ValidationError("division by zero");
  if (e == 0) return;
  if (f.nvars() < nvars()) f = f.extended(nvars());
  if (f.nvars() > nvars()) num_ = num_.extended(f.nvars());
  if (f.is_constant()) {
    num_ *= power(Rat(1) / f.constant_term(), static_cast<unsigned long>(e));
    return;
  }
  Rat s = normalize_factor(f);
  num_ *= power(s, static_cast<unsigned long>(e));
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [g, k] : den_)
    if (g == f) {
      k += e;
      return;
    }
  den_.emplace_back(std::move(f), e);
}

FactoredRatFunc& FactoredRatFunc::operator+=(const FactoredRatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    MPoly keep = num_;
    *this = o;
    if (keep.nvars() > nvars()) num_ = num_.extended(keep.nvars());
    return *this;
  }
  // Common denominator: maximal exponent of every factor.
  std::vector<std::pair<MPoly, int>> common = den_;
  for (const auto& [g, k] : o.den_) {
    auto it = std::find_if(common.begin(), common.end(), [&](const auto& p) { return p.first == g; });
    if (it == common.end())
      common.emplace_back(g, k);
    else
      it->second = std::max(it->second, k);
  }
  auto lift = [&](const FactoredRatFunc& a) {
    MPoly n = a.num_;
    for (const auto& [g, k] : common) {
      int have = 0;
      for (const auto& [h, j] : a.den_)
        if (h == g) have = j;
      if (k > have) n = n * pow_or_one(g, k - have);
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(common);
  if (num_.is_zero()) den_.clear();
  return *this;
}

FactoredRatFunc& FactoredRatFunc::operator-=(const FactoredRatFunc& o) { return *this += -o; }

FactoredRatFunc FactoredRatFunc::operator-() const {
  FactoredRatFunc r = *this;
  r.num_ *= Rat(-1);
  return r;
}

FactoredRatFunc& FactoredRatFunc::operator*=(const FactoredRatFunc& o) {
  num_ = num_ * o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (const auto& [g, k] : o.den_) {
    auto it = std::find_if(den_.begin(), den_.end(), [&](const auto& p) { return p.first == g; });
    if (it == den_.end())
      den_.emplace_back(g, k);
    else
      it->second += k;
  }
  return *this;
}

FactoredRatFunc FactoredRatFunc::derivative(int var) const {
  if (!depends_on(var)) return FactoredRatFunc(MPoly(nvars()));
  std::vector<std::size_t> moving;
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (den_[i].first.degree(var) > 0) moving.push_back(i);
  FactoredRatFunc r(nvars());
  if (moving.empty()) {
    r.num_ = num_.derivative(var);
    r.den_ = den_;
  } else {
    // (N / prod f^e)' = (N' prod f - N sum e f' prod_{g != f} g) / prod f^{e+1}
    MPoly all = MPoly::constant(nvars(), 1);
    for (std::size_t i : moving) all = all * den_[i].first;
    MPoly n = num_.derivative(var) * all;
    for (std::size_t i : moving) {
      MPoly rest = MPoly::constant(nvars(), den_[i].second);
      for (std::size_t j : moving)
        if (j != i) rest = rest * den_[j].first;
      n -= num_ * den_[i].first.derivative(var) * rest;
    }
    r.num_ = std::move(n);
    r.den_ = den_;
    for (std::size_t i : moving) ++r.den_[i].second;
  }
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

Rat FactoredRatFunc::eval(std::span<const Rat> point) const {
  Rat d = 1;
  for (const auto& [f, e] : den_) {
    Rat v = f.eval(point);
    if (v == 0) throw ValidationError("rational function evaluated at a pole");
    d *= power(v, static_cast<unsigned long>(e));
  }
  return num_.eval(point) / d;
}

std::string FactoredRatFunc::to_string(const std::vector<std::string>& names) const {
  if (den_.empty()) return num_.to_string(names);
  std::string d;
  for (const auto& [f, e] : den_) {
    if (!d.empty()) d += "*";
    d += "(" + f.to_string(names) + ")";
    if (e > 1) d += "^" + std::to_string(e);
  }
  return "(" + num_.to_string(names) + ")/(" + d + ")";
}

namespace {

FactoredRatFunc inverse(const FactoredRatFunc& r) {
  if (r.is_zero()) throw ValidationError("inverse of zero");
  FactoredRatFunc out(r.denominator());
  out.divide(r.numerator());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// OrePolynomial

OrePolynomial OrePolynomial::scalar(FactoredRatFunc c) {
  OrePolynomial p(c.nvars());
  p.add_term(Exponents(c.nvars(), 0), c);
  return p;
}

OrePolynomial OrePolynomial::partial(int nvars, int var, int power) {
  if (var < 0 || var >= nvars || power < 0) throw ValidationError("bad partial");
  OrePolynomial p(nvars);
  Exponents e(nvars, 0);
  e[var] = power;
  p.add_term(e, FactoredRatFunc::constant(nvars, 1));
  return p;
}

int OrePolynomial::order() const {
  int o = -1;
  for (const auto& [e, c] : terms_) o = std::max(o, total(e));
  return o;
}

int OrePolynomial::order(int var) const {
  int o = -1;
  for (const auto& [e, c] : terms_) o = std::max(o, e[var]);
  return o;
}

bool OrePolynomial::involves(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] > 0 || c.depends_on(var)) return true;
  return false;
}

void OrePolynomial::add_term(const Exponents& partials, const FactoredRatFunc& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(partials.size()) != nvars_) throw ValidationError("operator variable count mismatch");
  auto it = terms_.find(partials);
  if (it == terms_.end()) {
    terms_.emplace(partials, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

OrePolynomial& OrePolynomial::operator+=(const OrePolynomial& o) {
  if (o.nvars_ != nvars_) throw ValidationError("operator variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

OrePolynomial& OrePolynomial::operator-=(const OrePolynomial& o) { return *this += -o; }

OrePolynomial OrePolynomial::operator-() const {
  OrePolynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

std::string OrePolynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string part;
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (!part.empty()) part += "*";
      part += "D" + (v < static_cast<int>(names.size()) ? names[v] : "v" + std::to_string(v));
      if (e[v] > 1) part += "^" + std::to_string(e[v]);
    }
    std::string coeff = c.to_string(names);
    if (!out.empty()) out += " + ";
    if (part.empty())
      out += "(" + coeff + ")";
    else if (coeff == "1")
      out += part;
    else
      out += "(" + coeff + ")*" + part;
  }
  return out;
}

OrePolynomial ore_multiply(const OrePolynomial& a, const OrePolynomial& b) {
  if (a.nvars() != b.nvars()) throw ValidationError("operator variable count mismatch");
  const int k = a.nvars();
  OrePolynomial out(k);
  for (const auto& [beta, e] : b.terms()) {
    // Mixed partial derivatives of e, filled on demand.
    std::map<Exponents, FactoredRatFunc> derivs;
    derivs.emplace(Exponents(k, 0), e);
    std::function<const FactoredRatFunc&(const Exponents&)> deriv = [&](const Exponents& g) -> const FactoredRatFunc& {
      auto it = derivs.find(g);
      if (it != derivs.end()) return it->second;
      int v = 0;
      while (g[v] == 0) ++v;
      Exponents lower = g;
      --lower[v];
      FactoredRatFunc d = deriv(lower).derivative(v);
      return derivs.emplace(g, std::move(d)).first->second;
    };
    for (const auto& [alpha, c] : a.terms()) {
      Exponents gamma(k, 0);
      while (true) {
        Int mult = 1;
        for (int v = 0; v < k; ++v) mult *= binomial(alpha[v], gamma[v]);
        const FactoredRatFunc& d = deriv(gamma);
        if (!d.is_zero()) {
          Exponents target(k);
          for (int v = 0; v < k; ++v) target[v] = alpha[v] - gamma[v] + beta[v];
          out.add_term(target, c * d * FactoredRatFunc::constant(k, Rat(mult)));
        }
        int v = 0;
        while (v < k && gamma[v] == alpha[v]) gamma[v++] = 0;
        if (v == k) break;
        ++gamma[v];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

// Scalars are kept as constant * prod f_i^{e_i} while parsing so that a
// written (x*y*z-1)^2 in a denominator stays one squared factor.
struct Value {
  bool scalar = true;
  Rat constant = 1;
  std::vector<std::pair<MPoly, int>> factors;
  OrePolynomial op;
};

class OreParser {
 public:
  OreParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names), nv_(static_cast<int>(names.size())) {}

  OrePolynomial parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return to_ore(v);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("operator parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  FactoredRatFunc to_frac(const Value& v) const {
    FactoredRatFunc r = FactoredRatFunc::constant(nv_, v.constant);
    if (v.constant == 0) return r;
    for (const auto& [f, e] : v.factors) {
      if (e > 0)
        r *= FactoredRatFunc(pow_or_one(f, e));
      else
        r.divide(f, -e);
    }
    return r;
  }

  OrePolynomial to_ore(const Value& v) const {
    return v.scalar ? OrePolynomial::scalar(to_frac(v)) : v.op;
  }

  Value from_frac(const FactoredRatFunc& r) const {
    Value v;
    if (r.is_zero()) {
      v.constant = 0;
      return v;
    }
    if (r.numerator().is_constant())
      v.constant = r.numerator().constant_term();
    else
      v.factors.emplace_back(r.numerator(), 1);
    for (const auto& [f, e] : r.factors()) v.factors.emplace_back(f, -e);
    return v;
  }

  Value from_ore(OrePolynomial op) const {
    Value v;
    v.scalar = false;
    v.op = std::move(op);
    return v;
  }

  Value add(const Value& a, const Value& b, bool subtract) {
    if (a.scalar && b.scalar) {
      FactoredRatFunc r = to_frac(a);
      if (subtract)
        r -= to_frac(b);
      else
        r += to_frac(b);
      return from_frac(r);
    }
    OrePolynomial r = to_ore(a);
    if (subtract)
      r -= to_ore(b);
    else
      r += to_ore(b);
    return from_ore(std::move(r));
  }

  Value mul(const Value& a, const Value& b) {
    if (a.scalar && b.scalar) {
      Value r = a;
      r.constant *= b.constant;
      r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
      if (r.constant == 0) r.factors.clear();
      return r;
    }
    return from_ore(ore_multiply(to_ore(a), to_ore(b)));
  }

  Value invert(const Value& b) {
    if (!b.scalar) fail("division by an operator");
    if (b.constant == 0) fail("division by zero");
    Value r;
    r.constant = 1 / b.constant;
    for (const auto& [f, e] : b.factors) r.factors.emplace_back(f, -e);
    return r;
  }

  Value expr() {
    Value r = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return r;
      ++pos_;
      r = add(r, term(), c == '-');
    }
  }

  bool starts_primary(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Value term() {
    Value r = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r = mul(r, unary());
      } else if (c == '/') {
        ++pos_;
        r = mul(r, invert(unary()));
      } else if (starts_primary(c)) {
        r = mul(r, unary());
      } else {
        return r;
      }
    }
  }

  Value unary() {
    if (peek() == '-') {
      ++pos_;
      Value v = unary();
      if (v.scalar) {
        v.constant = -v.constant;
        return v;
      }
      return from_ore(-v.op);
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    Value base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (base.scalar) {
      Value r;
      r.constant = power(base.constant, static_cast<unsigned long>(e));
      for (const auto& [f, k] : base.factors) r.factors.emplace_back(f, k * e);
      if (r.constant == 0) r.factors.clear();
      return r;
    }
    Value r;
    for (int i = 0; i < e; ++i) r = mul(r, base);
    return r;
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Value v;
      v.constant = Rat(Int(std::string(text_.substr(start, pos_ - start))));
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it != names_.end()) {
        Value v;
        v.factors.emplace_back(MPoly::variable(nv_, static_cast<int>(it - names_.begin())), 1);
        return v;
      }
      if (name.size() > 1 && name[0] == 'D') {
        std::string var = name.substr(name[1] == '_' ? 2 : 1);
        auto jt = std::find(names_.begin(), names_.end(), var);
        if (jt != names_.end()) return from_ore(OrePolynomial::partial(nv_, static_cast<int>(jt - names_.begin())));
      }
      fail("unknown symbol '" + name + "'");
    }
    fail("expected operand");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  int nv_;
  std::size_t pos_ = 0;
};

}  // namespace

OrePolynomial parse_ore(std::string_view text, const std::vector<std::string>& names) {
  return OreParser(text, names).parse();
}

namespace {

std::vector<Rat> univariate(const MPoly& p) {
  std::vector<Rat> out(std::max(0, p.degree(0)) + 1, Rat(0));
  for (const auto& [m, v] : p.terms()) out[m[0]] = v;
  return out;
}

}  // namespace

OrePolynomial ore_from_ode(const LinearODE& ode) {
  OrePolynomial op(1);
  for (int j = 0; j <= ode.order(); ++j) {
    MPoly c(1);
    const auto& cs = ode.coefficient(j).coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) c.add_term({static_cast<int>(i)}, Rat(cs[i]));
    op.add_term({j}, FactoredRatFunc(c));
  }
  return op;
}

LinearODE ode_from_ore(const OrePolynomial& op) {
  if (op.nvars() != 1) throw ValidationError("expected an operator in a single variable");
  if (op.is_zero()) return LinearODE();
  // Clear denominators with the product of all factors at their maximal exponents.
  std::vector<std::pair<MPoly, int>> common;
  for (const auto& [e, c] : op.terms())
    for (const auto& [f, k] : c.factors()) {
      auto it = std::find_if(common.begin(), common.end(), [&](const auto& p) { return p.first == f; });
      if (it == common.end())
        common.emplace_back(f, k);
      else
        it->second = std::max(it->second, k);
    }
  MPoly clear = MPoly::constant(1, 1);
  for (const auto& [f, k] : common) clear = clear * pow_or_one(f, k);
  std::vector<std::vector<Rat>> coeffs(op.order() + 1);
  for (const auto& [e, c] : op.terms()) {
    // c * clear is a polynomial; divide out the remaining denominator.
    std::vector<Rat> n = univariate(c.numerator() * clear), d = univariate(c.denominator());
    const int ds = static_cast<int>(d.size());
    std::vector<Rat> q(std::max<int>(1, static_cast<int>(n.size()) - ds + 1), Rat(0));
    for (int i = static_cast<int>(n.size()) - 1; i >= ds - 1; --i) {
      Rat t = n[i] / d.back();
      q[i - ds + 1] = t;
      for (int j = 0; j < ds; ++j) n[i - ds + 1 + j] -= t * d[j];
    }
    if (std::any_of(n.begin(), n.end(), [](const Rat& x) { return x != 0; }))
      throw ValidationError("internal error: denominator clearing left a remainder");
    coeffs[e[0]] = q;
  }
  Int l = 1;
  for (const auto& c : coeffs)
    for (const auto& x : c) l = lcm(l, Int(x.get_den()));
  std::vector<IntPoly> polys;
  for (const auto& c : coeffs) {
    std::vector<Int> ints;
    for (const auto& x : c) ints.push_back(Int(x.get_num()) * (l / Int(x.get_den())));
    polys.emplace_back(std::move(ints));
  }
  LinearODE ode(std::move(polys));
  ode.normalize();
  return ode;
}

// ---------------------------------------------------------------------------
// Integrands

IntegrandSpec IntegrandSpec::fcc(int d) {
  if (d < 2) throw ValidationError("integrand dimension must be at least 2");
  IntegrandSpec f;
  f.dimension = d;
  const int nv = d + 1;
  MPoly s(nv);
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) s += MPoly::variable(nv, m) * MPoly::variable(nv, n);
  f.linear_form = MPoly::constant(nv, 1) - MPoly::variable(nv, d) * s * Rat(1, static_cast<unsigned long>(d * (d - 1) / 2));
  for (int j = 0; j < d; ++j) f.sqrt_indices.push_back(j);
  return f;
}

std::vector<std::string> IntegrandSpec::variable_names() const {
  std::vector<std::string> names;
  for (int j = 1; j <= dimension; ++j) names.push_back("x" + std::to_string(j));
  names.push_back("z");
  return names;
}

HyperexponentialFunction HyperexponentialFunction::from_integrand(const IntegrandSpec& f) {
  const int nv = f.nvars();
  HyperexponentialFunction g;
  for (int v = 0; v < nv; ++v) {
    FactoredRatFunc l(-f.linear_form.derivative(v));
    l.divide(f.linear_form);
    if (std::find(f.sqrt_indices.begin(), f.sqrt_indices.end(), v) != f.sqrt_indices.end()) {
      FactoredRatFunc s(MPoly::variable(nv, v));
      s.divide(MPoly::constant(nv, 1) - MPoly::variable(nv, v) * MPoly::variable(nv, v));
      l += s;
    }
    g.log_derivative.push_back(std::move(l));
  }
  return g;
}

HyperexponentialFunction HyperexponentialFunction::from_annihilators(int nvars,
                                                                     const std::vector<OrePolynomial>& ops) {
  HyperexponentialFunction g;
  g.log_derivative.assign(nvars, FactoredRatFunc(nvars));
  std::vector<char> seen(nvars, 0);
  for (const auto& op : ops) {
    if (op.nvars() != nvars || op.order() != 1) throw ValidationError("annihilators must be first-order operators");
    int var = -1;
    FactoredRatFunc a(nvars), b(nvars);
    for (const auto& [e, c] : op.terms()) {
      if (total(e) == 0) {
        b = c;
        continue;
      }
      const int v = static_cast<int>(std::find(e.begin(), e.end(), 1) - e.begin());
      if (var >= 0 && var != v) throw ValidationError("an annihilator may involve only one partial");
      var = v;
      a = c;
    }
    if (seen[var]) throw ValidationError("two annihilators for the same variable");
    seen[var] = 1;
    g.log_derivative[var] = -(b * inverse(a));
  }
  for (int u = 0; u < nvars; ++u)
    for (int v = u + 1; v < nvars; ++v)
      if (!(g.log_derivative[u].derivative(v) - g.log_derivative[v].derivative(u)).is_zero())
        throw ValidationError("annihilators are not compatible");
  return g;
}

RationalMultiplier apply_operator(const OrePolynomial& op, const HyperexponentialFunction& g) {
  const int k = g.nvars();
  if (op.nvars() != k) throw ValidationError("operator and function have different variables");
  // D^a g = Q_a g with Q_0 = 1 and Q_{a+e_v} = dQ_a/dv + Q_a l_v.
  std::map<Exponents, FactoredRatFunc> q;
  q.emplace(Exponents(k, 0), FactoredRatFunc::constant(k, 1));
  std::function<const FactoredRatFunc&(const Exponents&)> get = [&](const Exponents& a) -> const FactoredRatFunc& {
    auto it = q.find(a);
    if (it != q.end()) return it->second;
    int v = 0;
    while (a[v] == 0) ++v;
    Exponents lower = a;
    --lower[v];
    const FactoredRatFunc& prev = get(lower);
    FactoredRatFunc next = prev.derivative(v) + prev * g.log_derivative[v];
    return q.emplace(a, std::move(next)).first->second;
  };
  RationalMultiplier r{FactoredRatFunc(k)};
  for (const auto& [a, c] : op.terms()) r.value += c * get(a);
  return r;
}

RationalMultiplier apply_operator_to_integrand(const OrePolynomial& op, const IntegrandSpec& f) {
  return apply_operator(op, HyperexponentialFunction::from_integrand(f));
}

TelescopingCheck::TelescopingCheck(HyperexponentialFunction g, std::vector<int> integration_vars)
    : g_(std::move(g)), vars_(std::move(integration_vars)), residual_(g_.nvars()) {
  for (int v : vars_)
    if (v < 0 || v >= g_.nvars()) throw ValidationError("integration variable out of range");
}

void TelescopingCheck::add_telescoper(const OrePolynomial& part) {
  for (int v : vars_)
    if (part.involves(v))
      throw ValidationError("telescoper involves integration variable number " + std::to_string(v + 1));
  residual_ += apply_operator(part, g_).value;
}

void TelescopingCheck::add_delta(int var, const OrePolynomial& part) {
  if (std::find(vars_.begin(), vars_.end(), var) == vars_.end())
    throw ValidationError("delta part for a variable that is not integrated");
  // D_v (R g) = (dR/dv + R l_v) g
  FactoredRatFunc r = apply_operator(part, g_).value;
  residual_ += r.derivative(var) + r * g_.log_derivative[var];
}

bool certify_telescoper(const OrePolynomial& telescoper, const std::vector<std::pair<int, OrePolynomial>>& deltas,
                        const HyperexponentialFunction& g) {
  std::vector<int> vars;
  for (const auto& [v, b] : deltas)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  TelescopingCheck check(g, vars);
  check.add_telescoper(telescoper);
  for (const auto& [v, b] : deltas) check.add_delta(v, b);
  return check.holds();
}

bool certify_telescoper(const OrePolynomial& telescoper, const std::vector<std::pair<int, OrePolynomial>>& deltas,
                        const IntegrandSpec& f) {
  return certify_telescoper(telescoper, deltas, HyperexponentialFunction::from_integrand(f));
}

// ---------------------------------------------------------------------------
// Local expansions

LocalSeries LocalSeries::constant(int nvars, int order, const Rat& c) {
  LocalSeries s(nvars, order);
  s.add_term(Exponents(nvars, 0), c);
  return s;
}

Rat LocalSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void LocalSeries::add_term(const Exponents& e, const Rat& c) {
  if (c == 0 || total(e) > order_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LocalSeries& LocalSeries::operator+=(const LocalSeries& o) {
  order_ = std::min(order_, o.order_);
  std::erase_if(terms_, [&](const auto& t) { return total(t.first) > order_; });
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LocalSeries& LocalSeries::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
  LocalSeries r(a.nvars_, std::min(a.order_, b.order_));
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    const int da = total(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total(eb) > r.order_) continue;
      for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LocalSeries LocalSeries::derivative(int var) const {
  LocalSeries r(nvars_, order_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    r.add_term(f, c * e[var]);
  }
  return r;
}

LocalSeries LocalSeries::inverse() const {
  const Rat c0 = constant_term();
  if (c0 == 0) throw ValidationError("series inverse needs a nonzero constant term");
  LocalSeries s = *this * (1 / c0);
  s.add_term(Exponents(nvars_, 0), -1);
  return s.binomial_power(-1) * (1 / c0);
}

LocalSeries LocalSeries::binomial_power(const Rat& r) const {
  if (constant_term() != 0) throw ValidationError("binomial_power needs a series without constant term");
  LocalSeries out = constant(nvars_, order_, 1);
  LocalSeries p = constant(nvars_, order_, 1);
  Rat coeff = 1;
  for (int k = 1; k <= order_; ++k) {
    p = p * *this;
    coeff *= (r - (k - 1)) / Rat(k);
    out += p * coeff;
  }
  return out;
}

LocalSeries LocalSeries::exp() const {
  if (constant_term() != 0) throw ValidationError("exp needs a series without constant term");
  LocalSeries out = constant(nvars_, order_, 1);
  LocalSeries p = constant(nvars_, order_, 1);
  Rat coeff = 1;
  for (int k = 1; k <= order_; ++k) {
    p = p * *this;
    coeff /= k;
    out += p * coeff;
  }
  return out;
}

LocalSeries expand_at(const MPoly& p, std::span<const Rat> point, int order) {
  const int k = p.nvars();
  // Powers (p_v + t_v)^j per variable, built on demand.
  std::vector<std::vector<LocalSeries>> powers(k);
  auto power_of = [&](int v, int j) -> const LocalSeries& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(LocalSeries::constant(k, order, 1));
    while (static_cast<int>(list.size()) <= j) {
      LocalSeries lin = LocalSeries::constant(k, order, point[v]);
      Exponents e(k, 0);
      e[v] = 1;
      lin.add_term(e, 1);
      list.push_back(list.back() * lin);
    }
    return list[j];
  };
  LocalSeries out(k, order);
  for (const auto& [e, c] : p.terms()) {
    LocalSeries m = LocalSeries::constant(k, order, c);
    for (int v = 0; v < k; ++v)
      if (e[v] > 0) m = m * power_of(v, e[v]);
    out += m;
  }
  return out;
}

LocalSeries expand_at(const FactoredRatFunc& r, std::span<const Rat> point, int order) {
  LocalSeries out = expand_at(r.numerator(), point, order);
  for (const auto& [f, e] : r.factors()) {
    LocalSeries inv = expand_at(f, point, order).inverse();
    for (int i = 0; i < e; ++i) out = out * inv;
  }
  return out;
}

LocalSeries apply_operator(const OrePolynomial& op, const LocalSeries& h, std::span<const Rat> point) {
  const int order = h.order() - std::max(0, op.order());
  if (order < 0) throw ValidationError("local expansion too short for the operator");
  LocalSeries out(h.nvars(), order);
  for (const auto& [a, c] : op.terms()) {
    LocalSeries d = h;
    for (int v = 0; v < h.nvars(); ++v)
      for (int i = 0; i < a[v]; ++i) d = d.derivative(v);
    out += d * expand_at(c, point, order);
  }
  return out;
}

LocalSeries expand_at(const IntegrandSpec& f, std::span<const Rat> point, int order) {
  // 1/L and (1 - x_j^2)^(-1/2), each normalized to value 1 at the point.
  LocalSeries l = expand_at(f.linear_form, point, order);
  LocalSeries out = l.inverse() * l.constant_term();
  const int k = f.nvars();
  for (int j : f.sqrt_indices) {
    MPoly q = MPoly::constant(k, 1) - MPoly::variable(k, j) * MPoly::variable(k, j);
    LocalSeries s = expand_at(q, point, order);
    const Rat q0 = s.constant_term();
    if (q0 <= 0) throw ValidationError("square root factor is not positive at the point");
    s *= 1 / q0;
    s.add_term(Exponents(k, 0), -1);
    out = out * s.binomial_power(Rat(-1, 2));
  }
  return out;
}

LocalSeries expand_at(const HyperexponentialFunction& g, std::span<const Rat> point, int order) {
  // log(g/g(p)) from its gradient, degree by degree, then exponentiate.
  const int k = g.nvars();
  std::vector<LocalSeries> grad;
  for (int v = 0; v < k; ++v) grad.push_back(expand_at(g.log_derivative[v], point, std::max(0, order - 1)));
  LocalSeries h(k, order);
  Exponents e(k, 0);
  // Enumerate monomials of degree 1..order.
  std::function<void(int, int)> walk = [&](int v, int left) {
    if (v == k - 1) {
      e[v] = left;
      const int deg = total(e);
      if (deg >= 1 && deg <= order) {
        int u = 0;
        while (e[u] == 0) ++u;
        Exponents lower = e;
        --lower[u];
        h.add_term(e, grad[u].coefficient(lower) / e[u]);
      }
      return;
    }
    for (int i = 0; i <= left; ++i) {
      e[v] = i;
      walk(v + 1, left - i);
    }
  };
  for (int deg = 1; deg <= order; ++deg) walk(0, deg);
  return h.exp();
}

std::vector<std::vector<Rat>> random_points(int nvars, int count, std::uint64_t seed,
                                            const std::vector<const FactoredRatFunc*>& avoid,
                                            const IntegrandSpec* f) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7), den(2, 9);
  std::vector<std::vector<Rat>> out;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(out.size()) < count; ++attempt) {
    std::vector<Rat> p(nvars);
    for (auto& x : p) {
      x = Rat(num(rng), den(rng));
      x.canonicalize();
    }
    bool ok = true;
    for (const auto* r : avoid) {
      for (const auto& [g, e] : r->factors())
        if (g.eval(p) == 0) ok = false;
    }
    if (f) {
      if (f->linear_form.eval(p) == 0) ok = false;
      for (int j : f->sqrt_indices)
        if (p[j] * p[j] >= 1) ok = false;
    }
    if (ok) out.push_back(std::move(p));
  }
  if (static_cast<int>(out.size()) < count) throw ValidationError("could not find enough regular sample points");
  return out;
}

namespace {

void collect_coefficients(const OrePolynomial& op, std::vector<const FactoredRatFunc*>& out) {
  for (const auto& [e, c] : op.terms()) out.push_back(&c);
}

bool spot_check_with(const OrePolynomial& telescoper, const std::vector<std::pair<int, OrePolynomial>>& deltas,
                     const std::function<LocalSeries(std::span<const Rat>, int)>& expand,
                     const std::vector<std::vector<Rat>>& points) {
  int order = std::max(0, telescoper.order());
  for (const auto& [v, b] : deltas) order = std::max(order, b.order() + 1);
  for (const auto& p : points) {
    LocalSeries fs = expand(p, order);
    LocalSeries total = apply_operator(telescoper, fs, p);
    for (const auto& [v, b] : deltas) total += apply_operator(b, fs, p).derivative(v);
    if (total.constant_term() != 0) return false;
  }
  return true;
}

}  // namespace

bool spot_check_certificate(const OrePolynomial& telescoper,
                            const std::vector<std::pair<int, OrePolynomial>>& deltas, const IntegrandSpec& f,
                            int count, std::uint64_t seed) {
  std::vector<const FactoredRatFunc*> avoid;
  collect_coefficients(telescoper, avoid);
  for (const auto& [v, b] : deltas) collect_coefficients(b, avoid);
  auto points = random_points(f.nvars(), count, seed, avoid, &f);
  return spot_check_with(
      telescoper, deltas, [&](std::span<const Rat> p, int order) { return expand_at(f, p, order); }, points);
}

bool spot_check_certificate(const OrePolynomial& telescoper,
                            const std::vector<std::pair<int, OrePolynomial>>& deltas,
                            const HyperexponentialFunction& g, int count, std::uint64_t seed) {
  std::vector<const FactoredRatFunc*> avoid;
  collect_coefficients(telescoper, avoid);
  for (const auto& [v, b] : deltas) collect_coefficients(b, avoid);
  for (const auto& l : g.log_derivative) avoid.push_back(&l);
  auto points = random_points(g.nvars(), count, seed, avoid);
  return spot_check_with(
      telescoper, deltas, [&](std::span<const Rat> p, int order) { return expand_at(g, p, order); }, points);
}

bool spot_check_combination(const std::vector<std::pair<OrePolynomial, OrePolynomial>>& cofactor_pairs,
                            const OrePolynomial& rhs, int count, std::uint64_t seed) {
  const int k = rhs.nvars();
  std::vector<const FactoredRatFunc*> avoid;
  collect_coefficients(rhs, avoid);
  int order = std::max(0, rhs.order());
  for (const auto& [c, g] : cofactor_pairs) {
    collect_coefficients(c, avoid);
    collect_coefficients(g, avoid);
    order = std::max(order, std::max(0, c.order()) + std::max(0, g.order()));
  }
  auto points = random_points(k, count, seed, avoid);
  // Test function exp(sum r_v v) * q(v) with random r and a random cubic q.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> small(-5, 5);
  std::vector<Rat> r(k);
  for (auto& x : r) x = Rat(small(rng), 3);
  MPoly q(k);
  std::vector<Exponents> monos;
  std::function<void(int, int, Exponents&)> gen = [&](int v, int left, Exponents& e) {
    if (v == k) {
      monos.push_back(e);
      return;
    }
    for (int i = 0; i <= left; ++i) {
      e[v] = i;
      gen(v + 1, left - i, e);
    }
    e[v] = 0;
  };
  Exponents e0(k, 0);
  gen(0, 3, e0);
  for (const auto& m : monos) q.add_term(m, Rat(small(rng)));
  q.add_term(Exponents(k, 0), 11);
  for (const auto& p : points) {
    LocalSeries lin(k, order);
    for (int v = 0; v < k; ++v) {
      Exponents e(k, 0);
      e[v] = 1;
      lin.add_term(e, r[v]);
    }
    LocalSeries h = lin.exp() * expand_at(q, p, order);
    LocalSeries left(k, 0);
    for (const auto& [c, g] : cofactor_pairs) left += apply_operator(c, apply_operator(g, h, p), p);
    LocalSeries right = apply_operator(rhs, h, p);
    if (left.constant_term() != right.constant_term()) return false;
  }
  return true;
}

}  // namespace lgf
