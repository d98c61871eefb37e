#include "lgf/mguess.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "lgf/error.hpp"
#include "lgf/modular.hpp"

namespace lgf {

namespace {

constexpr unsigned kKeyBits = 12;
constexpr int kMaxCoordinate = (1 << kKeyBits) - 1;

Point decode_key(std::uint64_t key, int nvars) {
  Point p(nvars);
  for (int i = nvars - 1; i >= 0; --i) {
    p[i] = static_cast<int>(key & kMaxCoordinate);
    key >>= kKeyBits;
  }
  return p;
}

}  // namespace

SliceTable::SliceTable(int nvars, int growth, bool even_only) : nvars_(nvars), growth_(growth), even_only_(even_only) {
  if (nvars < 0 || nvars * kKeyBits > 64) throw ValidationError("slice tables support at most 5 coordinates");
}

const Int& SliceTable::zero() {
  static const Int z(0);
  return z;
}

std::uint64_t SliceTable::key(std::span<const int> x) const {
  Point c = canonical_point(x);
  std::uint64_t k = 0;
  for (int v : c) {
    if (v > kMaxCoordinate) throw ResourceError("slice coordinate too large");
    k = (k << kKeyBits) | static_cast<std::uint64_t>(v);
  }
  return k;
}

bool SliceTable::in_reach(int n, std::span<const int> x) const {
  if (n < 0) return false;
  long sum = 0;
  for (int v : x) {
    int a = std::abs(v);
    if (a > n) return false;
    sum += a;
  }
  if (sum > static_cast<long>(growth_) * n) return false;
  if (even_only_ && sum % 2 != 0) return false;
  return true;
}

const Int* SliceTable::find(int n, std::span<const int> x) const {
  if (!in_reach(n, x)) return &zero();
  if (n >= layer_count()) return nullptr;
  const auto& layer = layers_[n];
  auto it = layer.find(key(x));
  return it == layer.end() ? nullptr : &it->second;
}

const Int& SliceTable::value(int n, std::span<const int> x) const {
  const Int* v = find(n, x);
  if (v == nullptr) {
    std::string pt;
    for (int c : x) pt += (pt.empty() ? "" : ",") + std::to_string(c);
    throw InsufficientDataError("slice value at n=" + std::to_string(n) + ", x=(" + pt + ") is not available");
  }
  return *v;
}

void SliceTable::set(int n, std::span<const int> x, const Int& v) {
  if (n >= layer_count()) layers_.resize(n + 1);
  layers_[n][key(x)] = v;
}

std::vector<Point> SliceTable::reach_points(int n) const {
  std::vector<Point> out;
  if (n < 0) return out;
  Point cur(nvars_);
  const long cap = static_cast<long>(growth_) * n;
  std::function<void(int, int, long)> rec = [&](int pos, int bound, long sum) {
    if (pos == nvars_) {
      if (!even_only_ || sum % 2 == 0) out.push_back(cur);
      return;
    }
    for (int v = bound; v >= 0; --v) {
      if (sum + v > cap) continue;
      cur[pos] = v;
      rec(pos + 1, v, sum + v);
    }
  };
  rec(0, n, 0);
  return out;
}

bool SliceTable::layer_complete(int n) const {
  if (n < 0) return true;
  if (n >= layer_count()) return false;
  for (const auto& p : reach_points(n))
    if (!layers_[n].count(key(p))) return false;
  return true;
}

SliceTable SliceTable::restricted(int drop) const {
  if (drop < 0 || drop > nvars_) throw ValidationError("cannot drop " + std::to_string(drop) + " coordinates");
  SliceTable out(nvars_ - drop, growth_, even_only_);
  out.layers_.resize(layers_.size());
  for (std::size_t n = 0; n < layers_.size(); ++n) {
    for (const auto& [k, v] : layers_[n]) {
      Point p = decode_key(k, nvars_);
      bool tail_zero = true;
      for (int i = nvars_ - drop; i < nvars_; ++i) tail_zero = tail_zero && p[i] == 0;
      if (!tail_zero) continue;
      p.resize(nvars_ - drop);
      out.set(static_cast<int>(n), p, v);
    }
  }
  return out;
}

SliceTable slice_from_walks(const WalkTable& table, int nvars, int max_layer) {
  const StepSet& steps = table.lattice().step_set();
  const int d = steps.dimension();
  if (nvars > d) throw ValidationError("slice has more coordinates than the lattice");
  if (max_layer > table.max_steps()) throw InsufficientDataError("walk table is too short for the requested slice");
  int growth = 0;
  bool even = true;
  for (const auto& s : steps.steps()) {
    int l1 = 0, sum = 0;
    for (int v : s) {
      l1 += std::abs(v);
      sum += v;
    }
    growth = std::max(growth, l1);
    if (sum % 2 != 0) even = false;
  }
  SliceTable slice(nvars, growth, even);
  slice.resize_layers(max_layer + 1);
  Point full(d, 0);
  for (int n = 0; n <= max_layer; ++n) {
    for (const auto& p : slice.reach_points(n)) {
      std::copy(p.begin(), p.end(), full.begin());
      if (!table.is_exact(n, full))
        throw InsufficientDataError("walk table radius too small for an exact slice at n=" + std::to_string(n));
      slice.set(n, p, table.value(n, full));
    }
  }
  return slice;
}

// ---------------------------------------------------------------------------
// Multivariate recurrences

int MultivariateRecurrence::time_order() const {
  int t = 0;
  for (const auto& term : terms) t = std::max(t, term.shift[0]);
  return t;
}

int MultivariateRecurrence::degree() const {
  int d = 0;
  for (const auto& term : terms) d = std::max(d, term.coefficient.total_degree());
  return d;
}

void MultivariateRecurrence::normalize() {
  std::erase_if(terms, [](const Term& t) { return t.coefficient.is_zero(); });
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.shift < b.shift; });
  if (terms.empty()) return;
  Int lcm = 1, g = 0;
  for (const auto& t : terms)
    for (const auto& [e, c] : t.coefficient.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& t : terms)
    for (const auto& [e, c] : t.coefficient.terms()) g = gcd(g, Int(c.get_num() * (lcm / c.get_den())));
  // Sign: leading coefficient (largest exponent) of the first term of maximal time.
  const int T = time_order();
  const Term* lead = nullptr;
  for (const auto& t : terms)
    if (t.shift[0] == T) {
      lead = &t;
      break;
    }
  Rat scale(lcm, g);
  scale.canonicalize();
  if (lead->coefficient.terms().rbegin()->second < 0) scale = -scale;
  for (auto& t : terms) t.coefficient *= scale;
}

namespace {

// Integer polynomial in (n, x_1..x_k) prepared for fast evaluation.
struct CompiledPoly {
  std::vector<std::vector<int>> exps;
  std::vector<Int> coeffs;
  int max_exp = 0;

  explicit CompiledPoly(const MPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      if (c.get_den() != 1) throw ValidationError("recurrence coefficients must be integral");
      exps.push_back(e);
      coeffs.push_back(c.get_num());
      for (int v : e) max_exp = std::max(max_exp, v);
    }
  }

  // powers[v][e] = value of variable v to the e.
  Int eval(const std::vector<std::vector<Int>>& powers) const {
    Int acc = 0, term;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      term = coeffs[i];
      for (std::size_t v = 0; v < exps[i].size(); ++v)
        if (exps[i][v]) term *= powers[v][exps[i][v]];
      acc += term;
    }
    return acc;
  }
};

void fill_powers(std::vector<std::vector<Int>>& powers, int n, std::span<const int> x, int max_exp) {
  powers.resize(x.size() + 1);
  for (std::size_t v = 0; v <= x.size(); ++v) {
    const long base = v == 0 ? n : x[v - 1];
    auto& row = powers[v];
    row.resize(max_exp + 1);
    row[0] = 1;
    for (int e = 1; e <= max_exp; ++e) row[e] = row[e - 1] * base;
  }
}

std::string shift_string(const std::vector<int>& shift, int nvars) {
  std::string s = "b[n";
  if (shift[0] > 0) s += "+" + std::to_string(shift[0]);
  s += "](";
  for (int i = 0; i < nvars; ++i) {
    s += (i ? "," : "") + std::string("x") + std::to_string(i + 1);
    int v = shift[i + 1];
    if (v > 0) s += "+" + std::to_string(v);
    if (v < 0) s += std::to_string(v);
  }
  return s + ")";
}

std::vector<std::string> variable_names(int nvars) {
  std::vector<std::string> names = {"n"};
  for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

Int MultivariateRecurrence::apply(const SliceTable& table, int n, std::span<const int> x) const {
  Int acc = 0;
  std::vector<Rat> point(nvars + 1);
  point[0] = n;
  for (int i = 0; i < nvars; ++i) point[i + 1] = x[i];
  Point ref(nvars);
  for (const auto& term : terms) {
    for (int i = 0; i < nvars; ++i) ref[i] = x[i] + term.shift[i + 1];
    const Int& v = table.value(n + term.shift[0], ref);
    if (v == 0) continue;
    Rat c = term.coefficient.eval(point);
    acc += c.get_num() * v;
  }
  return acc;
}

std::string MultivariateRecurrence::to_string() const {
  auto names = variable_names(nvars);
  std::string out;
  for (const auto& term : terms) {
    std::string c = term.coefficient.to_string(names);
    if (!out.empty()) out += " + ";
    out += "(" + c + ")*" + shift_string(term.shift, nvars);
  }
  return (out.empty() ? "0" : out) + " = 0";
}

void write_multivariate(std::ostream& os, const MultivariateRecurrence& rec) {
  os << "# lgf-op kind=mrec order=" << rec.time_order() << " degree=" << rec.degree() << " vars=" << rec.nvars
     << "\n";
  for (const auto& term : rec.terms) {
    os << "@";
    for (int v : term.shift) os << " " << v;
    os << "\n";
    std::vector<std::pair<Exponents, Rat>> monos(term.coefficient.terms().begin(), term.coefficient.terms().end());
    std::sort(monos.begin(), monos.end(), [](const auto& a, const auto& b) {
      int da = 0, db = 0;
      for (int v : a.first) da += v;
      for (int v : b.first) db += v;
      if (da != db) return da < db;
      return a.first < b.first;
    });
    for (const auto& [e, c] : monos) {
      os << c.get_num().get_str();
      for (int v : e) os << " " << v;
      os << "\n";
    }
  }
}

MultivariateRecurrence read_multivariate(std::istream& is) {
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) break;
  if (line.rfind("# lgf-op", 0) != 0 || line.find("kind=mrec") == std::string::npos)
    throw ValidationError("expected a '# lgf-op kind=mrec' header");
  auto pos = line.find("vars=");
  if (pos == std::string::npos) throw ValidationError("mrec header lacks vars=");
  MultivariateRecurrence rec;
  rec.nvars = std::stoi(line.substr(pos + 5));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '@') {
      std::string at;
      ls >> at;
      MultivariateRecurrence::Term term{std::vector<int>(rec.nvars + 1), MPoly(rec.nvars + 1)};
      for (auto& v : term.shift)
        if (!(ls >> v)) throw ValidationError("mrec: short shift line");
      rec.terms.push_back(std::move(term));
      continue;
    }
    if (rec.terms.empty()) throw ValidationError("mrec: monomial before the first shift block");
    std::string c;
    ls >> c;
    Exponents e(rec.nvars + 1);
    for (auto& v : e)
      if (!(ls >> v)) throw ValidationError("mrec: short monomial line");
    Int ci;
    if (ci.set_str(c, 10) != 0) throw ValidationError("mrec: bad coefficient '" + c + "'");
    rec.terms.back().coefficient.add_term(e, Rat(ci));
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Guessing

namespace {

struct Column {
  int shift;
  int mono;
};

struct Layout {
  int nvars;
  std::vector<std::vector<int>> shifts;  // (t, s_1..s_k)
  std::vector<std::vector<int>> monos;   // (e_n, e_1..e_k)
  int max_exp = 0;
  int ncols() const { return static_cast<int>(shifts.size() * monos.size()); }
};

Layout make_layout(int nvars, const MultiAnsatz& a) {
  Layout L;
  L.nvars = nvars;
  std::vector<int> s(nvars + 1);
  for (int t = 0; t <= a.time_order; ++t) {
    s[0] = t;
    std::function<void(int)> rec = [&](int i) {
      if (i == nvars + 1) {
        L.shifts.push_back(s);
        return;
      }
      for (int v = -a.radius; v <= a.radius; ++v) {
        s[i] = v;
        rec(i + 1);
      }
    };
    rec(1);
  }
  std::vector<std::vector<int>> xmonos;
  std::vector<int> e(nvars);
  for (int total = 0; total <= a.degree_x; ++total) {
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == nvars) {
        if (left == 0) xmonos.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[i] = v;
        rec(i + 1, left - v);
      }
    };
    if (nvars == 0) {
      if (total == 0) xmonos.push_back(e);
    } else {
      rec(0, total);
    }
  }
  for (int en = 0; en <= a.degree_n; ++en)
    for (const auto& xm : xmonos) {
      int total = en;
      for (int v : xm) total += v;
      if (a.degree_total >= 0 && total > a.degree_total) continue;
      std::vector<int> m = {en};
      m.insert(m.end(), xm.begin(), xm.end());
      L.monos.push_back(m);
    }
  L.max_exp = std::max(a.degree_n, a.degree_x);
  return L;
}

struct BasePoint {
  int n;
  Point x;
};

// Values referenced by a base point, one per shift (nullptr = zero).
void row_values(const SliceTable& table, const Layout& L, const BasePoint& b, std::vector<const Int*>& vals) {
  vals.resize(L.shifts.size());
  Point ref(L.nvars);
  for (std::size_t si = 0; si < L.shifts.size(); ++si) {
    for (int i = 0; i < L.nvars; ++i) ref[i] = b.x[i] + L.shifts[si][i + 1];
    const Int& v = table.value(b.n + L.shifts[si][0], ref);
    vals[si] = v == 0 ? nullptr : &v;
  }
}

void mono_values(const Layout& L, const BasePoint& b, std::vector<Int>& out) {
  std::vector<std::vector<Int>> powers;
  fill_powers(powers, b.n, b.x, L.max_exp);
  out.resize(L.monos.size());
  for (std::size_t mi = 0; mi < L.monos.size(); ++mi) {
    Int m = 1;
    for (std::size_t v = 0; v < L.monos[mi].size(); ++v)
      if (L.monos[mi][v]) m *= powers[v][L.monos[mi][v]];
    out[mi] = m;
  }
}

modular::Row modular_row(const SliceTable& table, const Layout& L, const BasePoint& b, const modular::Field& f) {
  std::vector<const Int*> vals;
  std::vector<Int> monos;
  row_values(table, L, b, vals);
  mono_values(L, b, monos);
  std::vector<modular::u32> mm(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) mm[i] = f.from(monos[i]);
  modular::Row row(L.ncols(), 0);
  const std::size_t M = L.monos.size();
  for (std::size_t si = 0; si < vals.size(); ++si) {
    if (!vals[si]) continue;
    const modular::u32 v = f.from(*vals[si]);
    for (std::size_t mi = 0; mi < M; ++mi) row[si * M + mi] = f.mul(v, mm[mi]);
  }
  return row;
}

// Exact value of the recurrence given by an integer column vector at a base point.
Int exact_residual(const SliceTable& table, const Layout& L, const BasePoint& b, const std::vector<Int>& v) {
  std::vector<const Int*> vals;
  std::vector<Int> monos;
  row_values(table, L, b, vals);
  mono_values(L, b, monos);
  const std::size_t M = L.monos.size();
  Int acc = 0, c;
  for (std::size_t si = 0; si < vals.size(); ++si) {
    if (!vals[si]) continue;
    c = 0;
    for (std::size_t mi = 0; mi < M; ++mi)
      if (v[si * M + mi] != 0) c += v[si * M + mi] * monos[mi];
    if (c != 0) acc += c * *vals[si];
  }
  return acc;
}

std::vector<BasePoint> nontrivial_base_points(const SliceTable& table, const MultiAnsatz& a, const Layout& L,
                                              int max_layer) {
  std::vector<BasePoint> out;
  const int k = L.nvars;
  for (int n = 0; n + a.time_order <= max_layer; ++n) {
    const int box = n + a.time_order + a.radius;
    Point x(k, -box);
    Point ref(k);
    while (true) {
      bool nontrivial = false;
      for (const auto& s : L.shifts) {
        for (int i = 0; i < k; ++i) ref[i] = x[i] + s[i + 1];
        if (table.in_reach(n + s[0], ref)) {
          nontrivial = true;
          break;
        }
      }
      if (nontrivial) out.push_back({n, x});
      int i = 0;
      while (i < k && x[i] == box) x[i++] = -box;
      if (i == k) break;
      ++x[i];
    }
  }
  return out;
}

}  // namespace

std::vector<MultivariateRecurrence> guess_multivariate_recurrence(const SliceTable& table, const MultiAnsatz& ansatz,
                                                                  const MultiGuessOptions& options) {
  if (ansatz.time_order < 0 || ansatz.radius < 0 || ansatz.degree_n < 0 || ansatz.degree_x < 0)
    throw ValidationError("multivariate ansatz bounds must be nonnegative");
  int max_layer = options.max_layer;
  if (max_layer < 0) {
    max_layer = -1;
    while (table.layer_complete(max_layer + 1)) ++max_layer;
  }
  for (int n = 0; n <= max_layer; ++n)
    if (!table.layer_complete(n)) throw InsufficientDataError("slice layer " + std::to_string(n) + " is incomplete");

  bool any_nonzero = false;
  for (int n = 0; n <= max_layer && !any_nonzero; ++n)
    for (const auto& p : table.reach_points(n))
      if (table.value(n, p) != 0) {
        any_nonzero = true;
        break;
      }
  if (!any_nonzero) throw InsufficientDataError("cannot guess from an all-zero table");

  const Layout L = make_layout(table.nvars(), ansatz);
  const int ncols = L.ncols();
  std::vector<BasePoint> all = nontrivial_base_points(table, ansatz, L, max_layer);
  if (static_cast<long>(all.size()) < ncols + options.margin)
    throw InsufficientDataError("only " + std::to_string(all.size()) + " equations for " + std::to_string(ncols) +
                                " unknowns; need a surplus of " + std::to_string(options.margin));

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t want = static_cast<std::size_t>(options.oversample * ncols) + options.margin;
  want = std::min(want, all.size());
  std::vector<std::size_t> solve_rows(order.begin(), order.begin() + want);
  std::vector<std::size_t> check_rows(order.begin() + want,
                                      order.begin() + std::min(all.size(), want + options.validation_rows));

  std::vector<std::vector<Int>> basis;
  for (int round = 0; round < 8; ++round) {
    auto rows_mod = [&](const modular::Field& f) {
      std::vector<modular::Row> rows;
      rows.reserve(solve_rows.size());
      for (std::size_t i : solve_rows) rows.push_back(modular_row(table, L, all[i], f));
      return rows;
    };
    auto verify = [&](const std::vector<std::vector<Rat>>& recon) {
      for (const auto& v : recon) {
        std::vector<Int> iv = modular::primitive_integer_vector(v);
        for (std::size_t i : solve_rows)
          if (exact_residual(table, L, all[i], iv) != 0) return false;
      }
      return true;
    };
    modular::NullspaceOptions nopt;
    nopt.max_primes = 60;
    auto recon = modular::multimodular_nullspace(rows_mod, ncols, verify, nopt);
    basis.clear();
    for (const auto& v : recon) basis.push_back(modular::primitive_integer_vector(v));
    if (basis.empty()) return {};

    // Check a random combination of the basis on the held-back rows.
    const modular::Field f(modular::prime(97));
    std::vector<modular::u32> combo(ncols, 0);
    for (const auto& v : basis) {
      const modular::u32 r = static_cast<modular::u32>(rng() % f.prime());
      for (int j = 0; j < ncols; ++j)
        if (v[j] != 0) combo[j] = f.add(combo[j], f.mul(r, f.from(v[j])));
    }
    std::vector<std::size_t> failures;
    for (std::size_t i : check_rows) {
      modular::Row row = modular_row(table, L, all[i], f);
      modular::u64 acc = 0;
      for (int j = 0; j < ncols; ++j)
        if (row[j] && combo[j]) acc = f.add(static_cast<modular::u32>(acc), f.mul(row[j], combo[j]));
      if (acc != 0) failures.push_back(i);
    }
    if (failures.empty()) break;
    if (round == 7) throw VerificationError("multivariate guess does not stabilize on held-back equations");
    std::set<std::size_t> failed(failures.begin(), failures.end());
    const std::size_t add = std::min<std::size_t>(failures.size(), std::max<std::size_t>(ncols / 4, 16));
    solve_rows.insert(solve_rows.end(), failures.begin(), failures.begin() + add);
    std::erase_if(check_rows, [&](std::size_t i) {
      return failed.count(i) && std::find(solve_rows.begin(), solve_rows.end(), i) != solve_rows.end();
    });
  }

  std::vector<MultivariateRecurrence> out;
  const std::size_t M = L.monos.size();
  for (const auto& v : basis) {
    MultivariateRecurrence rec;
    rec.nvars = L.nvars;
    for (std::size_t si = 0; si < L.shifts.size(); ++si) {
      MPoly c(L.nvars + 1);
      for (std::size_t mi = 0; mi < M; ++mi)
        if (v[si * M + mi] != 0) c.add_term(L.monos[mi], Rat(v[si * M + mi]));
      if (!c.is_zero()) rec.terms.push_back({L.shifts[si], std::move(c)});
    }
    rec.normalize();
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extension

namespace {

struct CompiledRecurrence {
  int T;
  int max_exp = 0;
  std::vector<std::vector<int>> shifts;
  std::vector<CompiledPoly> coeffs;
  std::vector<int> top;  // indices of terms at time T

  explicit CompiledRecurrence(const MultivariateRecurrence& r) : T(r.time_order()) {
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      shifts.push_back(r.terms[i].shift);
      coeffs.emplace_back(r.terms[i].coefficient);
      max_exp = std::max(max_exp, coeffs.back().max_exp);
      if (r.terms[i].shift[0] == T) top.push_back(static_cast<int>(i));
    }
  }
};

std::vector<Point> signed_permutations(const Point& u) {
  std::set<Point> seen;
  Point p = u;
  std::sort(p.begin(), p.end());
  do {
    const int k = static_cast<int>(p.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      Point q = p;
      bool dup = false;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) {
          if (q[i] == 0) dup = true;
          q[i] = -q[i];
        }
      if (!dup) seen.insert(q);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<Point> out;
  out.push_back(u);
  for (const auto& q : seen)
    if (q != u) out.push_back(q);
  return out;
}

std::string point_string(const Point& u) {
  std::string pt;
  for (int c : u) pt += (pt.empty() ? "" : ",") + std::to_string(c);
  return "(" + pt + ")";
}

struct Strategy {
  int rec = -1;
  int lead = -1;
  int orient = -1;
};

// Tries to determine b_m(u) from one recurrence, lead term and orientation.
// Returns false when some other reference is unknown or the lead vanishes.
bool try_solve(const SliceTable& table, const CompiledRecurrence& R, int lead, const Point& v, const Point& u, int m,
               Int& result, std::vector<std::vector<Int>>& powers) {
  const int n = m - R.T;
  if (n < 0) return false;
  const int k = static_cast<int>(u.size());
  Point x(k), ref(k);
  for (int i = 0; i < k; ++i) x[i] = v[i] - R.shifts[lead][i + 1];
  // Known-ness first; it is cheaper than coefficient evaluation.
  std::vector<const Int*> vals(R.shifts.size());
  std::vector<char> is_target(R.shifts.size(), 0);
  for (std::size_t t = 0; t < R.shifts.size(); ++t) {
    for (int i = 0; i < k; ++i) ref[i] = x[i] + R.shifts[t][i + 1];
    const int layer = n + R.shifts[t][0];
    if (layer == m && table.in_reach(m, ref) && canonical_point(ref) == u) {
      is_target[t] = 1;
      continue;
    }
    vals[t] = table.find(layer, ref);
    if (vals[t] == nullptr) return false;
  }
  fill_powers(powers, n, x, R.max_exp);
  Int lead_coeff = 0, rest = 0;
  for (std::size_t t = 0; t < R.shifts.size(); ++t) {
    if (is_target[t]) {
      lead_coeff += R.coeffs[t].eval(powers);
    } else if (*vals[t] != 0) {
      rest += R.coeffs[t].eval(powers) * *vals[t];
    }
  }
  if (lead_coeff == 0) return false;
  rest = -rest;
  if (!mpz_divisible_p(rest.get_mpz_t(), lead_coeff.get_mpz_t())) {
    throw VerificationError("guess inconsistency: recurrence yields a non-integral value at n=" + std::to_string(m) +
                            ", x=" + point_string(u));
  }
  mpz_divexact(result.get_mpz_t(), rest.get_mpz_t(), lead_coeff.get_mpz_t());
  return true;
}

// b_m(u) = sum over steps of b_{m-1}(u + s), when every neighbour of u (padded
// with zeros to the full dimension) has at most k nonzero coordinates.
bool walk_solve(const SliceTable& table, const StepSet& walk, const Point& u, int m, Int& result) {
  if (m == 0) return false;
  const int k = static_cast<int>(u.size());
  const int d = walk.dimension();
  Point full(d, 0), nb(d);
  std::copy(u.begin(), u.end(), full.begin());
  result = 0;
  for (const auto& s : walk.steps()) {
    int nonzero = 0;
    for (int i = 0; i < d; ++i) {
      nb[i] = full[i] + s[i];
      nonzero += nb[i] != 0;
    }
    if (nonzero > k) return false;
    Point c = canonical_point(nb);
    c.resize(k);
    const Int* v = table.find(m - 1, c);
    if (v == nullptr) return false;
    result += *v;
  }
  return true;
}

}  // namespace

ExtensionReport extend_slice(SliceTable& table, const std::vector<MultivariateRecurrence>& recurrences,
                             int first_layer, int target, const StepSet* walk) {
  ExtensionReport report;
  if (walk && walk->dimension() < table.nvars()) throw ValidationError("walk dimension is smaller than the slice");
  if (recurrences.empty()) throw InsufficientDataError("no recurrences to extend with");
  std::vector<CompiledRecurrence> recs;
  for (const auto& r : recurrences) recs.emplace_back(r);
  for (int n = 0; n < first_layer; ++n)
    if (!table.layer_complete(n))
      throw InsufficientDataError("slice layer " + std::to_string(n) + " is incomplete; cannot extend");

  std::map<Point, Strategy> cache;
  std::vector<std::vector<Int>> powers;
  Int value;
  for (int m = first_layer; m <= target; ++m) {
    if (m >= table.layer_count()) table.resize_layers(m + 1);
    // Points whose references are still unknown are retried once the rest of
    // the layer is filled in.
    std::vector<Point> pending = table.reach_points(m);
    while (!pending.empty()) {
      std::vector<Point> deferred;
      for (const auto& u : pending) {
        const Int* stored = table.find(m, u);
        std::vector<Point> orbit;
        bool solved = false;
        auto attempt = [&](const Strategy& s) {
          if (orbit.empty()) orbit = signed_permutations(u);
          return try_solve(table, recs[s.rec], s.lead, orbit[s.orient], u, m, value, powers);
        };
        auto it = cache.find(u);
        if (it != cache.end()) solved = attempt(it->second);
        for (int ri = 0; ri < static_cast<int>(recs.size()) && !solved; ++ri) {
          if (orbit.empty()) orbit = signed_permutations(u);
          for (int lead : recs[ri].top) {
            for (int oi = 0; oi < static_cast<int>(orbit.size()) && !solved; ++oi) {
              Strategy s{ri, lead, oi};
              if (attempt(s)) {
                solved = true;
                cache[u] = s;
              }
            }
            if (solved) break;
          }
        }
        bool walked = false;
        if (!solved && walk && walk_solve(table, *walk, u, m, value)) solved = walked = true;
        if (solved) {
          ++(walked ? report.walked : report.solved);
          if (stored) {
            ++report.checked;
            if (*stored != value)
              throw VerificationError("guess inconsistency: extended value differs from data at n=" +
                                      std::to_string(m) + ", x=" + point_string(u));
          } else {
            table.set(m, u, value);
          }
        } else if (stored) {
          ++report.seeded;
        } else {
          deferred.push_back(u);
        }
      }
      if (deferred.size() == pending.size())
        throw InsufficientDataError("no applicable recurrence at n=" + std::to_string(m) + ", x=" +
                                    point_string(deferred.front()) +
                                    ": every leading coefficient vanishes or a referenced value is unknown");
      pending = std::move(deferred);
    }
  }
  return report;
}

}  // namespace lgf
