#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/golden.hpp"
#include "lgf/numerics.hpp"
#include "lgf/ode_ops.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;

namespace {

constexpr long prec = 480;

std::vector<BigFloat> to_float(const std::vector<Rat>& v, long p) {
  std::vector<BigFloat> out;
  for (const auto& x : v) out.emplace_back(x, p);
  return out;
}

const std::vector<Rat>& f4() {
  static const auto f =
      extend_sequence(golden::partial_sum_recurrence_4d(), golden::partial_sum_initials_4d(), 2000);
  return f;
}

BigFloat parse(const std::string& s, long p) {
  BigFloat x(p);
  mpfr_set_str(x.get(), s.c_str(), 10, MPFR_RNDN);
  return x;
}

}  // namespace

TEST_CASE("extend_sequence basics") {
  const LinearRecurrence constant({IntPoly{-1}, IntPoly{1}});
  for (const auto& v : extend_sequence(constant, {Rat(1)}, 30)) CHECK(v == 1);

  // (n+2)^2 c(n+2) = (n+1)^2 c(n): squared central binomials over 16^n.
  const LinearRecurrence sq({IntPoly{-1, -2, -1}, IntPoly{}, IntPoly{4, 4, 1}});
  const auto c = extend_sequence(sq, {Rat(1), Rat(0)}, 40);
  for (int n = 0; n <= 20; ++n) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    CHECK(c[2 * n] == Rat(b * b) / Rat(Int(1) << (4 * n)));
    if (n < 20) CHECK(c[2 * n + 1] == 0);
  }

  CHECK_THROWS_AS(extend_sequence(sq, {Rat(1)}, 10), ValidationError);
  const LinearRecurrence singular({IntPoly{1}, IntPoly{-3, 1}});
  try {
    extend_sequence(singular, {Rat(1)}, 10);
    FAIL("expected a singular point");
  } catch (const SingularPointError& e) {
    CHECK(e.n == 3);
  }
  CHECK_THROWS_AS(extend_sequence(constant, {Rat(1), Rat(1), Rat(2)}, 10), VerificationError);
}

TEST_CASE("4D partial sums from the recurrence match counting") {
  const auto counted = partial_sums(excursion_series(Lattice::fcc(4), 60));
  for (int n = 0; n <= 60; ++n) CHECK(f4()[n] == counted[n]);
  for (int n = 1; n <= 2000; ++n) REQUIRE(f4()[n] >= f4()[n - 1]);
}

TEST_CASE("floating extension agrees with exact extension") {
  const auto exact = to_float(f4(), prec);
  const auto mixed =
      extend_sequence(golden::partial_sum_recurrence_4d(), golden::partial_sum_initials_4d(), 2000, prec, 100);
  REQUIRE(mixed.size() == exact.size());
  for (int n : {100, 500, 2000}) CHECK((mixed[n] - exact[n]).abs().log10_abs() < -100);
}

TEST_CASE("extrapolation of simple sequences") {
  std::vector<BigFloat> v;
  for (int n = 0; n <= 100; ++n) v.push_back(BigFloat(1, prec) + (n ? BigFloat(1, prec) / BigFloat(n, prec) : BigFloat(prec)));
  const auto m = ExtrapolationModel::evenly_spaced(3, 1, 100, 10);
  CHECK((fit_limit(v, m, prec) - BigFloat(1, prec)).abs().log10_abs() < -130);

  // Half-integer exponent: 2 + n^{-1/2} - 3 n^{-3/2}.
  std::vector<BigFloat> h;
  for (int n = 0; n <= 100; ++n) {
    if (n == 0) {
      h.emplace_back(prec);
      continue;
    }
    const BigFloat x = BigFloat(n, prec).pow(Rat(-1, 2));
    h.push_back(BigFloat(2, prec) + x - BigFloat(3, prec) * x * x * x);
  }
  const auto mh = ExtrapolationModel::evenly_spaced(3, Rat(1, 2), 100, 10);
  CHECK((fit_limit(h, mh, prec) - BigFloat(2, prec)).abs().log10_abs() < -130);

  CHECK_THROWS_AS(ExtrapolationModel::evenly_spaced(3, 1, 100, 0), ValidationError);
  ExtrapolationModel bad = m;
  bad.window.pop_back();
  CHECK_THROWS_AS(fit_limit(v, bad, prec), ValidationError);
  CHECK_THROWS_AS(fit_limit(v, ExtrapolationModel::evenly_spaced(3, 1, 200, 10), prec), InsufficientDataError);
}

TEST_CASE("4D limit to 50 digits") {
  const auto v = to_float(f4(), prec);
  const auto m = ExtrapolationModel::evenly_spaced(30, 1, 2000, 33);
  const auto est = extrapolate_limit(v, m, prec);
  const auto& gold = golden::reference_digits().front();
  CHECK((est.value - parse(gold.p1, prec)).abs().log10_abs() < -50);
  CHECK(est.error.log10_abs() < -60);

  // The neglected exponentially small modes stay below 1e-60 off the nodes.
  const auto c = fit_coefficients(v, m, prec);
  for (long n : {1990L, 1500L, 1200L}) CHECK((fit_value(c, m, n, prec) - v[n]).abs().log10_abs() < -60);

  // Window robustness: a 10% shift moves the limit by less than the estimate.
  const auto shifted = ExtrapolationModel::evenly_spaced(30, 1, 1800, 30);
  CHECK((fit_limit(v, shifted, prec) - est.value).abs() < est.error);

  // Too little precision for a 31-point fit.
  CHECK_THROWS_AS(fit_limit(to_float(f4(), 64), m, 64), PrecisionLossError);
}

TEST_CASE("return probabilities") {
  CHECK(return_probability(BigFloat(1, prec)).value.is_zero());
  CHECK_THROWS_AS(return_probability(BigFloat(Rat(1, 2), prec)), ValidationError);
  const auto r = return_probability(BigFloat(2, prec));
  CHECK(r.value == BigFloat(Rat(1, 2), prec));
  CHECK(return_probability_divergent(prec).value == BigFloat(1, prec));

  // Square lattice: partial sums grow like log n.
  const auto rec2 = ode_to_recurrence(quotient_closure(golden::ode_2d()));
  const auto f2 = extend_sequence(rec2, partial_sums(excursion_series(Lattice::fcc(2), 10)).coefficients, 2000);
  CHECK(partial_sums_diverge(f2));
  CHECK_FALSE(partial_sums_diverge(f4()));
  DigitSchedule s;
  const auto rep2 = evaluate_return_probability(rec2, partial_sums(excursion_series(Lattice::fcc(2), 10)).coefficients,
                                                0, s);
  CHECK(rep2.divergent);
  CHECK(format_digits(rep2) == "P(1) = inf (divergent)\nR = 1 (divergent)\n");
}

TEST_CASE("two-precision digits for 4D") {
  DigitSchedule s;
  s.digits = 50;
  const auto rep = evaluate_return_probability(golden::partial_sum_recurrence_4d(), golden::partial_sum_initials_4d(),
                                               1, s);
  CHECK(rep.places >= 50);
  const auto& gold = golden::reference_digits().front();
  CHECK(rep.p1.substr(0, 52) == gold.p1.substr(0, 52));
  CHECK(rep.r.substr(0, 52) == gold.r.substr(0, 52));
  CHECK(format_digits(rep).rfind("P(1) = 1.10584379792120476018", 0) == 0);
}

TEST_CASE("decimal helpers") {
  CHECK(BigFloat(Rat(1, 3), 200).to_fixed(5) == "0.33333");
  CHECK(BigFloat(Rat(-7, 4), 200).to_fixed(3) == "-1.750");
  CHECK(BigFloat(Rat(2, 3), 200).to_fixed(0) == "0");
  CHECK(common_decimal_places("1.2345", "1.2349") == 3);
  CHECK(common_decimal_places("1.2345", "2.2345") == 0);
}
