#include "lgf/guess.hpp"

#include "lgf/error.hpp"
#include "lgf/modular.hpp"

namespace lgf {

namespace {

using Matrix = std::vector<std::vector<Int>>;

std::vector<Int> integer_row(const std::vector<Rat>& row) {
  Int lcm = 1;
  for (const auto& v : row)
    if (v != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<Int> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) out[i] = (lcm / row[i].get_den()) * row[i].get_num();
  return out;
}

// Unknown (j, i) of an order-r, degree-D ansatz sits in column j*(D+1)+i.
template <class Op>
Op operator_from_vector(const std::vector<Int>& v, int r, int D) {
  std::vector<IntPoly> polys;
  for (int j = 0; j <= r; ++j)
    polys.emplace_back(std::vector<Int>(v.begin() + j * (D + 1), v.begin() + (j + 1) * (D + 1)));
  Op op(std::move(polys));
  op.normalize();
  return op;
}

bool lex_less(const PolyCoeffOperator& a, const PolyCoeffOperator& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  for (int j = 0; j <= a.order(); ++j) {
    const auto& x = a.coefficient(j).coefficients();
    const auto& y = b.coefficient(j).coefficients();
    const std::size_t n = std::max(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      Int u = i < x.size() ? x[i] : Int(0), w = i < y.size() ? y[i] : Int(0);
      if (u != w) return u < w;
    }
  }
  return false;
}

void check_nonzero(const std::vector<Rat>& values) {
  for (const auto& v : values)
    if (v != 0) return;
  throw InsufficientDataError("cannot guess from an all-zero sequence");
}

// Shared sweep: build(r, D, used) returns the equation matrix; accept(op)
// checks the candidate against all data.
template <class Op, class Build, class Accept>
std::optional<Op> sweep(std::size_t size, const GuessOptions& opt, Build build, Accept accept) {
  if (opt.max_order < opt.min_order || opt.max_degree < 0) throw ValidationError("empty guessing box");
  const long used = static_cast<long>(size) - opt.holdout;
  bool skipped = false;
  for (int r = std::max(opt.min_order, 0); r <= opt.max_order; ++r) {
    for (int D = 0; D <= opt.max_degree; ++D) {
      const long unknowns = static_cast<long>(r + 1) * (D + 1);
      const long equations = used - r;
      if (equations < unknowns + opt.margin) {
        skipped = true;
        continue;
      }
      Matrix m = build(r, D, used);
      if (modular::modular_nullity(m, static_cast<int>(unknowns)) == 0) continue;
      auto basis = modular::exact_nullspace(m, static_cast<int>(unknowns));
      std::optional<Op> best;
      for (const auto& v : basis) {
        Op op = operator_from_vector<Op>(modular::primitive_integer_vector(v), r, D);
        if (op.order() < r || !accept(op)) continue;
        if (!best || lex_less(op, *best)) best = op;
      }
      if (best) return best;
    }
  }
  if (skipped)
    throw InsufficientDataError("not enough terms (" + std::to_string(size) +
                                ") to overdetermine the guessing box by the required margin");
  return std::nullopt;
}

}  // namespace

std::optional<LinearRecurrence> guess_recurrence(const std::vector<Rat>& values, const GuessOptions& options) {
  check_nonzero(values);
  auto build = [&](int r, int D, long used) {
    Matrix m;
    std::vector<Rat> row((r + 1) * (D + 1));
    for (long n = 0; n + r < used; ++n) {
      for (int i = 0; i <= r; ++i) {
        Rat p = values[n + i];
        for (int e = 0; e <= D; ++e) {
          row[i * (D + 1) + e] = p;
          p *= n;
        }
      }
      m.push_back(integer_row(row));
    }
    return m;
  };
  auto accept = [&](const LinearRecurrence& rec) { return all_zero(apply_recurrence(rec, values)); };
  return sweep<LinearRecurrence>(values.size(), options, build, accept);
}

std::optional<LinearODE> guess_ode(const ExactSeries& series, const GuessOptions& options) {
  check_nonzero(series.coefficients);
  auto build = [&](int r, int D, long used) {
    // D^j s has coefficients (m+j)_j s_{m+j}.
    std::vector<std::vector<Rat>> derivs(r + 1);
    for (int j = 0; j <= r; ++j)
      for (long m = 0; m + j < used; ++m) {
        Int ff = 1;
        for (int t = 0; t < j; ++t) ff *= m + j - t;
        derivs[j].push_back(series[m + j] * Rat(ff));
      }
    Matrix m;
    std::vector<Rat> row((r + 1) * (D + 1));
    for (long k = 0; k + r < used; ++k) {
      for (int j = 0; j <= r; ++j)
        for (int i = 0; i <= D; ++i) row[j * (D + 1) + i] = i <= k ? derivs[j][k - i] : Rat(0);
      m.push_back(integer_row(row));
    }
    return m;
  };
  auto accept = [&](const LinearODE& ode) { return all_zero(apply_ode_to_series(ode, series).coefficients); };
  return sweep<LinearODE>(series.size(), options, build, accept);
}

}  // namespace lgf
