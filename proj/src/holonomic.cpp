#include "lgf/holonomic.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lgf/error.hpp"
#include "lgf/mpoly.hpp"

namespace lgf {

PolyCoeffOperator::PolyCoeffOperator(std::vector<IntPoly> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void PolyCoeffOperator::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int PolyCoeffOperator::degree() const {
  int d = -1;
  for (const auto& c : coeffs_) d = std::max(d, c.degree());
  return d;
}

void PolyCoeffOperator::normalize() {
  trim();
  if (coeffs_.empty()) return;
  Int g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c.content());
  if (leading().leading() < 0) g = -g;
  if (g != 1)
    for (auto& c : coeffs_) c = c.divided_exactly(g);
}

bool PolyCoeffOperator::is_normalized() const {
  PolyCoeffOperator copy = *this;
  copy.normalize();
  return copy == *this;
}

namespace {

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-') out += " - " + terms[i].substr(1);
    else out += " + " + terms[i];
  }
  return out;
}

std::string wrap(const IntPoly& p, const std::string& var) {
  std::string s = p.to_string(var);
  bool single = p.coefficients().size() - p.valuation() == 1;
  return single ? s : "(" + s + ")";
}

}  // namespace

std::string LinearRecurrence::to_string(const std::string& seq, const std::string& var) const {
  std::vector<std::string> terms;
  for (int i = order(); i >= 0; --i) {
    const IntPoly& q = coeffs_[i];
    if (q.is_zero()) continue;
    std::string arg = i == 0 ? var : var + "+" + std::to_string(i);
    std::string shift = seq + "(" + arg + ")";
    if (q == IntPoly{1}) terms.push_back(shift);
    else if (q == IntPoly{-1}) terms.push_back("-" + shift);
    else terms.push_back(wrap(q, var) + "*" + shift);
  }
  return join_terms(terms) + " = 0";
}

std::string LinearODE::to_string(const std::string& fn, const std::string& var) const {
  std::vector<std::string> terms;
  for (int j = order(); j >= 0; --j) {
    const IntPoly& a = coeffs_[j];
    if (a.is_zero()) continue;
    std::string deriv = j == 0 ? fn : fn + (j <= 3 ? std::string(j, '\'') : "^(" + std::to_string(j) + ")");
    if (a == IntPoly{1}) terms.push_back(deriv);
    else if (a == IntPoly{-1}) terms.push_back("-" + deriv);
    else terms.push_back(wrap(a, var) + "*" + deriv);
  }
  return join_terms(terms) + " = 0";
}

std::vector<IntPoly> polys_from_expressions(const std::vector<std::string>& exprs, const std::string& var) {
  std::vector<MPoly> polys;
  Int lcm = 1;
  for (const auto& e : exprs) {
    MPoly p = parse_mpoly(e, {var});
    for (const auto& [exp, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    polys.push_back(std::move(p));
  }
  std::vector<IntPoly> out;
  for (const auto& p : polys) {
    std::vector<Int> coeffs(p.is_zero() ? 0 : p.degree(0) + 1);
    for (const auto& [exp, c] : p.terms()) {
      Rat scaled = c * Rat(lcm);
      coeffs[exp[0]] = scaled.get_num();
    }
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

LinearODE ode_from_expressions(const std::vector<std::string>& exprs, const std::string& var) {
  LinearODE op(polys_from_expressions(exprs, var));
  op.normalize();
  return op;
}

LinearRecurrence recurrence_from_expressions(const std::vector<std::string>& exprs, const std::string& var) {
  LinearRecurrence op(polys_from_expressions(exprs, var));
  op.normalize();
  return op;
}

namespace {

void write_block(std::ostream& os, const std::string& kind, const PolyCoeffOperator& op) {
  os << "# lgf-op kind=" << kind << " order=" << op.order() << " degree=" << op.degree() << "\n";
  for (const auto& c : op.coefficients()) {
    if (c.is_zero()) {
      os << "0\n";
      continue;
    }
    for (int i = 0; i <= c.degree(); ++i) os << (i ? " " : "") << c.coefficients()[i].get_str();
    os << "\n";
  }
}

std::vector<IntPoly> read_polys(std::istream& is, int count) {
  std::vector<IntPoly> polys;
  std::string line;
  while (static_cast<int>(polys.size()) < count && std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<Int> coeffs;
    std::string tok;
    while (ls >> tok) {
      Int v;
      if (v.set_str(tok, 10) != 0) throw ValidationError("operator file: bad integer '" + tok + "'");
      coeffs.push_back(v);
    }
    polys.emplace_back(std::move(coeffs));
  }
  if (static_cast<int>(polys.size()) != count)
    throw ValidationError("operator file: expected " + std::to_string(count) + " coefficient lines, found " +
                          std::to_string(polys.size()));
  return polys;
}

template <class Op>
Op read_kind(std::istream& is, const std::string& kind) {
  OperatorHeader h = read_operator_header(is);
  if (h.kind != kind) throw ValidationError("operator file: expected kind=" + kind + ", found kind=" + h.kind);
  Op op(read_polys(is, h.order + 1));
  if (op.order() != h.order || op.degree() != h.degree)
    throw ValidationError("operator file: header order/degree do not match the coefficients");
  if (!op.is_normalized()) throw ValidationError("operator file: operator is not normalized");
  return op;
}

}  // namespace

void write_operator(std::ostream& os, const LinearODE& op) { write_block(os, "ode", op); }
void write_operator(std::ostream& os, const LinearRecurrence& op) { write_block(os, "rec", op); }

OperatorHeader read_operator_header(std::istream& is) {
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) break;
  if (line.rfind("# lgf-op", 0) != 0) throw ValidationError("operator file: missing '# lgf-op' header");
  OperatorHeader h;
  std::istringstream hs(line.substr(8));
  std::string field;
  while (hs >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ValidationError("operator file: bad header field '" + field + "'");
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "kind") h.kind = value;
      else if (key == "order") h.order = std::stoi(value);
      else if (key == "degree") h.degree = std::stoi(value);
      else h.extra += (h.extra.empty() ? "" : " ") + field;
    } catch (const std::exception&) {
      throw ValidationError("operator file: bad header value '" + field + "'");
    }
  }
  if (h.kind.empty() || h.order < 0) throw ValidationError("operator file: header needs kind and order");
  return h;
}

LinearODE read_ode(std::istream& is) { return read_kind<LinearODE>(is, "ode"); }
LinearRecurrence read_recurrence(std::istream& is) { return read_kind<LinearRecurrence>(is, "rec"); }

LinearODE read_ode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open operator file '" + path + "'");
  return read_ode(in);
}

std::vector<Rat> apply_recurrence(const LinearRecurrence& rec, const std::vector<Rat>& values) {
  const int r = rec.order();
  std::vector<Rat> out;
  for (long n = 0; n + r < static_cast<long>(values.size()); ++n) {
    Rat acc = 0;
    for (int i = 0; i <= r; ++i) {
      const IntPoly& q = rec.coefficient(i);
      if (q.is_zero()) continue;
      acc += Rat(q.eval(Int(n))) * values[n + i];
    }
    out.push_back(acc);
  }
  return out;
}

ExactSeries apply_ode_to_series(const LinearODE& ode, const ExactSeries& s) {
  const int r = ode.order();
  const long size = static_cast<long>(s.size());
  if (ode.is_zero() || size <= r)
    throw InsufficientDataError("series with " + std::to_string(size) + " terms is too short for an order-" +
                                std::to_string(r) + " ODE");
  // Coefficients of D^j s, computed once per j.
  std::vector<std::vector<Rat>> derivs(r + 1);
  for (int j = 0; j <= r; ++j) {
    derivs[j].resize(size - j);
    for (long m = 0; m + j < size; ++m) {
      Int ff = 1;
      for (int t = 0; t < j; ++t) ff *= m + j - t;
      derivs[j][m] = s[m + j] * Rat(ff);
    }
  }
  ExactSeries out;
  out.variable = s.variable;
  for (long k = 0; k + r < size; ++k) {
    Rat acc = 0;
    for (int j = 0; j <= r; ++j) {
      const auto& a = ode.coefficient(j).coefficients();
      for (long i = 0; i < static_cast<long>(a.size()) && i <= k; ++i)
        if (a[i] != 0) acc += Rat(a[i]) * derivs[j][k - i];
    }
    out.coefficients.push_back(acc);
  }
  return out;
}

bool all_zero(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace lgf
