#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgf/bigfloat.hpp"
#include "lgf/holonomic.hpp"

namespace lgf {

// f(0..N) from sum_i q_i(n) f(n+i) = 0. Values beyond the order that are
// already supplied are checked against the recurrence (VerificationError).
// SingularPointError (naming n) when q_r(n) vanishes where f(n+r) is needed.
std::vector<Rat> extend_sequence(const LinearRecurrence& rec, const std::vector<Rat>& initials, int N);

// Exact up to exact_terms (all of them by default), then converted once and
// continued at the given precision.
std::vector<BigFloat> extend_sequence(const LinearRecurrence& rec, const std::vector<Rat>& initials, int N,
                                      long precision, std::optional<int> exact_terms = std::nullopt);

// Fit of f(n) ~ c_0 + sum_{k=0}^{K-1} c_{k+1} n^{-alpha-k} through K+1 sample
// indices. alpha = 1 gives the plain 1, 1/n, ..., 1/n^K basis.
struct ExtrapolationModel {
  int order = 30;  // K
  Rat alpha = 1;
  std::vector<long> window;

  // Indices last, last - step, ..., last - K*step.
  static ExtrapolationModel evenly_spaced(int order, const Rat& alpha, long last, long step);
  // Validates window size and distinct positive indices (ValidationError).
  void validate() const;
};

struct LimitEstimate {
  BigFloat value;
  // |difference| to the fit through a second window 20% lower.
  BigFloat error;
  long precision = 0;
};

// values[n] = f(n). PrecisionLossError when the fit is too ill-conditioned
// for the working precision. fit_coefficients returns c_0..c_K in the scaled
// basis (top/n)^(alpha+k-1), top the largest window index.
std::vector<BigFloat> fit_coefficients(const std::vector<BigFloat>& values, const ExtrapolationModel& model,
                                       long precision);
BigFloat fit_value(const std::vector<BigFloat>& coefficients, const ExtrapolationModel& model, long n,
                   long precision);
BigFloat fit_limit(const std::vector<BigFloat>& values, const ExtrapolationModel& model, long precision);
LimitEstimate extrapolate_limit(const std::vector<BigFloat>& values, const ExtrapolationModel& model,
                                long precision);

// Logarithmic-type growth: the increments over n/4..n/2..n do not shrink
// (ratio above 0.9), or f(n) exceeds the bound.
bool partial_sums_diverge(const std::vector<Rat>& f, double bound = 1e6);

struct ReturnProbability {
  BigFloat value;
  bool divergent = false;
};
// R = 1 - 1/P(1). ValidationError if P1 < 1.
ReturnProbability return_probability(const BigFloat& p1);
ReturnProbability return_probability_divergent(long precision);

// End-to-end evaluation of lim f(n) and R from a partial-sum recurrence,
// at precision p and p + 64 bits.
struct DigitSchedule {
  int digits = 50;
  int terms = 2000;  // N
  int order = 30;    // K
  double window_fraction = 0.5;  // the window spans [N(1-fraction), N]
  // 0: derived from digits and order.
  long precision = 0;

  long working_precision() const;
};

struct DigitReport {
  std::string p1;  // decimal string with `places` places
  std::string r;
  int places = 0;  // certified places: two-precision agreement and fit error
  double log10_error = 0;
  bool divergent = false;
  long precision = 0;
};

DigitReport evaluate_return_probability(const LinearRecurrence& partial_sum_rec, const std::vector<Rat>& initials,
                                        const Rat& alpha, const DigitSchedule& schedule);

// `P(1) = <digits> (± 10^-k)` and `R = <digits> (± 10^-k)`, one per line.
std::string format_digits(const DigitReport& report);

}  // namespace lgf
