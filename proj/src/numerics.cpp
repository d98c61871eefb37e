#include "lgf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lgf/error.hpp"

namespace lgf {

namespace {

void check_initials(const LinearRecurrence& rec, const std::vector<Rat>& initials) {
  if (rec.is_zero()) throw ValidationError("zero recurrence");
  const int r = rec.order();
  if (static_cast<int>(initials.size()) < r)
    throw ValidationError("recurrence of order " + std::to_string(r) + " needs " + std::to_string(r) +
                          " initial values, got " + std::to_string(initials.size()));
}

// The residual at n, using values[n..n+r].
template <class T, class Conv>
T residual(const LinearRecurrence& rec, const std::vector<T>& v, long n, Conv conv) {
  T s = conv(Int(0));
  for (int i = 0; i <= rec.order(); ++i) s += conv(rec.coefficient(i).eval(Int(n))) * v[n + i];
  return s;
}

Int leading_at(const LinearRecurrence& rec, long m) {
  Int lead = rec.leading().eval(Int(m));
  if (lead == 0)
    throw SingularPointError("leading coefficient of the recurrence vanishes at n = " + std::to_string(m), m);
  return lead;
}

}  // namespace

std::vector<Rat> extend_sequence(const LinearRecurrence& rec, const std::vector<Rat>& initials, int N) {
  check_initials(rec, initials);
  const int r = rec.order();
  std::vector<Rat> v = initials;
  const auto conv = [](const Int& x) { return Rat(x); };
  for (long n = 0; n + r < static_cast<long>(v.size()); ++n)
    if (residual(rec, v, n, conv) != 0)
      throw VerificationError("supplied value f(" + std::to_string(n + r) + ") contradicts the recurrence");
  if (static_cast<int>(v.size()) > N + 1) v.resize(N + 1);
  v.reserve(N + 1);
  while (static_cast<int>(v.size()) <= N) {
    const long m = static_cast<long>(v.size()) - r;
    const Int lead = leading_at(rec, m);
    Rat s = 0;
    for (int i = 0; i < r; ++i) s += Rat(rec.coefficient(i).eval(Int(m))) * v[m + i];
    s /= Rat(-lead);
    v.push_back(std::move(s));
  }
  return v;
}

std::vector<BigFloat> extend_sequence(const LinearRecurrence& rec, const std::vector<Rat>& initials, int N,
                                      long precision, std::optional<int> exact_terms) {
  check_initials(rec, initials);
  const int r = rec.order();
  const int exact_to = std::max({r - 1, static_cast<int>(initials.size()) - 1, std::min(N, exact_terms.value_or(N))});
  const auto exact = extend_sequence(rec, initials, std::min(N, exact_to));
  std::vector<BigFloat> v;
  v.reserve(N + 1);
  for (const auto& x : exact) v.emplace_back(x, precision);
  while (static_cast<int>(v.size()) <= N) {
    const long m = static_cast<long>(v.size()) - r;
    const BigFloat lead(leading_at(rec, m), precision);
    BigFloat s(precision);
    for (int i = 0; i < r; ++i) s += BigFloat(rec.coefficient(i).eval(Int(m)), precision) * v[m + i];
    v.push_back(-(s / lead));
  }
  return v;
}

ExtrapolationModel ExtrapolationModel::evenly_spaced(int order, const Rat& alpha, long last, long step) {
  ExtrapolationModel m;
  m.order = order;
  m.alpha = alpha;
  for (int j = 0; j <= order; ++j) m.window.push_back(last - j * step);
  m.validate();
  return m;
}

void ExtrapolationModel::validate() const {
  if (order < 0) throw ValidationError("extrapolation order must be nonnegative");
  if (static_cast<int>(window.size()) != order + 1)
    throw ValidationError("extrapolation window needs " + std::to_string(order + 1) + " indices");
  std::set<long> seen;
  for (long n : window) {
    if (n <= 0) throw ValidationError("extrapolation window indices must be positive");
    if (!seen.insert(n).second) throw ValidationError("extrapolation window indices must be distinct");
  }
}

std::vector<BigFloat> fit_coefficients(const std::vector<BigFloat>& values, const ExtrapolationModel& model,
                                       long precision) {
  model.validate();
  const int size = model.order + 1;
  const long top = *std::max_element(model.window.begin(), model.window.end());
  if (top >= static_cast<long>(values.size()))
    throw InsufficientDataError("extrapolation window reaches f(" + std::to_string(top) + "), only " +
                                std::to_string(values.size()) + " values supplied");

  // Rows [1, s^alpha, s^(alpha+1), ...] with s = top / n in [1, ...).
  std::vector<std::vector<BigFloat>> a(size);
  std::vector<BigFloat> b;
  for (int j = 0; j < size; ++j) {
    const long n = model.window[j];
    BigFloat s = BigFloat(top, precision) / BigFloat(n, precision);
    a[j].reserve(size);
    a[j].emplace_back(1, precision);
    if (size > 1) {
      BigFloat p = s.pow(model.alpha);
      for (int k = 1; k < size; ++k) {
        a[j].push_back(p);
        p *= s;
      }
    }
    b.emplace_back(values[n]);
    mpfr_prec_round(b.back().get(), precision, MPFR_RNDN);
  }

  // Gaussian elimination with partial pivoting; the pivot spread bounds the
  // bits lost.
  double max_pivot = -std::numeric_limits<double>::infinity(), min_pivot = -max_pivot;
  for (int col = 0; col < size; ++col) {
    int piv = col;
    for (int i = col + 1; i < size; ++i)
      if (a[i][col].abs() > a[piv][col].abs()) piv = i;
    if (a[piv][col].is_zero()) throw PrecisionLossError("extrapolation system is singular at this precision");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const double lp = a[col][col].log10_abs();
    max_pivot = std::max(max_pivot, lp);
    min_pivot = std::min(min_pivot, lp);
    for (int i = col + 1; i < size; ++i) {
      if (a[i][col].is_zero()) continue;
      const BigFloat f = a[i][col] / a[col][col];
      for (int k = col; k < size; ++k) a[i][k] -= f * a[col][k];
      b[i] -= f * b[col];
    }
  }
  const double lost_bits = (max_pivot - min_pivot) / std::log10(2.0);
  if (lost_bits > static_cast<double>(precision) - 32)
    throw PrecisionLossError("extrapolation fit loses about " + std::to_string(static_cast<long>(lost_bits)) +
                             " bits, working precision is " + std::to_string(precision));
  std::vector<BigFloat> x(size, BigFloat(precision));
  for (int i = size - 1; i >= 0; --i) {
    BigFloat s = b[i];
    for (int k = i + 1; k < size; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

BigFloat fit_value(const std::vector<BigFloat>& coefficients, const ExtrapolationModel& model, long n,
                   long precision) {
  const long top = *std::max_element(model.window.begin(), model.window.end());
  const BigFloat s = BigFloat(top, precision) / BigFloat(n, precision);
  BigFloat sum = coefficients.at(0);
  if (coefficients.size() > 1) {
    BigFloat p = s.pow(model.alpha);
    for (std::size_t k = 1; k < coefficients.size(); ++k) {
      sum += coefficients[k] * p;
      p *= s;
    }
  }
  return sum;
}

BigFloat fit_limit(const std::vector<BigFloat>& values, const ExtrapolationModel& model, long precision) {
  return fit_coefficients(values, model, precision).front();
}

LimitEstimate extrapolate_limit(const std::vector<BigFloat>& values, const ExtrapolationModel& model,
                                long precision) {
  LimitEstimate est{fit_limit(values, model, precision), BigFloat(precision), precision};
  ExtrapolationModel lower = model;
  for (auto& n : lower.window) n = std::max(1L, (n * 4) / 5);
  std::set<long> distinct(lower.window.begin(), lower.window.end());
  if (distinct.size() != lower.window.size())
    throw ValidationError("extrapolation window too dense to build a comparison window");
  est.error = (est.value - fit_limit(values, lower, precision)).abs();
  return est;
}

bool partial_sums_diverge(const std::vector<Rat>& f, double bound) {
  const long n = static_cast<long>(f.size()) - 1;
  if (n < 16) throw InsufficientDataError("divergence test needs at least 17 partial sums");
  if (f[n].get_d() > bound) return true;
  const double d1 = Rat(f[n / 2] - f[n / 4]).get_d();
  const double d2 = Rat(f[n] - f[n / 2]).get_d();
  if (d1 <= 0) return false;
  return d2 / d1 > 0.9;
}

ReturnProbability return_probability(const BigFloat& p1) {
  const BigFloat one(1, p1.precision());
  if (p1 < one) throw ValidationError("P(1) below 1 is impossible for a return-probability generating function");
  return {one - one / p1, false};
}

ReturnProbability return_probability_divergent(long precision) { return {BigFloat(1, precision), true}; }

long DigitSchedule::working_precision() const {
  if (precision > 0) return precision;
  return static_cast<long>(std::ceil(digits * 3.33)) + 5L * order + 160;
}

DigitReport evaluate_return_probability(const LinearRecurrence& partial_sum_rec, const std::vector<Rat>& initials,
                                        const Rat& alpha, const DigitSchedule& schedule) {
  if (schedule.terms < 2 * schedule.order + 2)
    throw ValidationError("too few terms for the extrapolation order");
  const auto f = extend_sequence(partial_sum_rec, initials, schedule.terms);
  DigitReport rep;
  rep.precision = schedule.working_precision();
  if (partial_sums_diverge(f)) {
    rep.divergent = true;
    rep.p1 = "inf";
    rep.r = "1";
    rep.log10_error = -std::numeric_limits<double>::infinity();
    return rep;
  }

  const long step = std::max(1L, static_cast<long>(schedule.terms * schedule.window_fraction) / schedule.order);
  const auto model = ExtrapolationModel::evenly_spaced(schedule.order, alpha, schedule.terms, step);
  const int shown = schedule.digits + 10;
  std::string p1s[2], rs[2];
  double log_err = 0;
  for (int t = 0; t < 2; ++t) {
    const long prec = rep.precision + 64 * t;
    std::vector<BigFloat> values;
    values.reserve(f.size());
    for (const auto& x : f) values.emplace_back(x, prec);
    const auto est = extrapolate_limit(values, model, prec);
    const auto r = return_probability(est.value);
    p1s[t] = est.value.to_fixed(shown);
    rs[t] = r.value.to_fixed(shown);
    if (t == 0) log_err = est.error.log10_abs();
  }
  rep.log10_error = log_err;
  int places = std::min(common_decimal_places(p1s[0], p1s[1]), common_decimal_places(rs[0], rs[1]));
  if (std::isfinite(log_err)) places = std::min(places, static_cast<int>(std::floor(-log_err)));
  places = std::max(0, std::min(places, shown));
  rep.places = places;
  auto cut = [&](const std::string& s) { return s.substr(0, s.find('.') + 1 + places); };
  rep.p1 = cut(p1s[1]);
  rep.r = cut(rs[1]);
  if (places == 0) {
    rep.p1 = p1s[1].substr(0, p1s[1].find('.'));
    rep.r = rs[1].substr(0, rs[1].find('.'));
  }
  return rep;
}

std::string format_digits(const DigitReport& report) {
  if (report.divergent) return "P(1) = inf (divergent)\nR = 1 (divergent)\n";
  const std::string tol = " (± 10^-" + std::to_string(report.places) + ")";
  return "P(1) = " + report.p1 + tol + "\nR = " + report.r + tol + "\n";
}

}  // namespace lgf
