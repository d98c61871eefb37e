#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/golden.hpp"
#include "lgf/guess.hpp"
#include "lgf/ode_ops.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;

namespace {

const ExactSeries& series_4d() {
  static const ExactSeries s = excursion_series(Lattice::fcc(4), 120);
  return s;
}

IntPoly lambda_power(int a, int b) {
  // lambda^a (lambda - 1)^b
  return IntPoly::monomial(1, a) * pow(IntPoly{-1, 1}, b);
}

std::vector<Rat> sequence_from(const LinearRecurrence& rec, std::vector<Rat> v, int n) {
  const int r = rec.order();
  while (static_cast<int>(v.size()) < n) {
    const int m = static_cast<int>(v.size()) - r;
    Rat s = 0;
    for (int i = 0; i < r; ++i) s += Rat(rec.coefficient(i).eval(Int(m))) * v[m + i];
    v.push_back(-s / Rat(rec.leading().eval(Int(m))));
  }
  return v;
}

}  // namespace

TEST_CASE("embedded operators are normalized") {
  for (const auto* ode : {&golden::ode_2d(), &golden::ode_4d(), &golden::ode_5d()}) CHECK(ode->is_normalized());
  CHECK(golden::ode_4d().order() == 4);
  CHECK(golden::ode_4d().degree() == 10);
  CHECK(golden::ode_5d().order() == 6);
  CHECK(golden::ode_5d().degree() == 17);
  CHECK(golden::partial_sum_recurrence_4d().order() == 6);
}

TEST_CASE("embedded ODEs annihilate the counted series") {
  CHECK(all_zero(apply_ode_to_series(golden::ode_2d(), excursion_series(Lattice::fcc(2), 40)).coefficients));
  const auto r4 = apply_ode_to_series(golden::ode_4d(), series_4d());
  CHECK(r4.size() == 117);
  CHECK(all_zero(r4.coefficients));
  CHECK(all_zero(apply_ode_to_series(golden::ode_5d(), excursion_series(Lattice::fcc(5), 30)).coefficients));

  // A changed coefficient is detected.
  auto c = golden::ode_4d().coefficients();
  c[0] += IntPoly{1};
  CHECK_FALSE(all_zero(apply_ode_to_series(LinearODE(c), series_4d()).coefficients));
  CHECK_THROWS_AS(apply_ode_to_series(golden::ode_4d(), series_4d().truncated(4)), InsufficientDataError);
}

TEST_CASE("indicial polynomials") {
  CHECK(indicial_polynomial(golden::ode_2d()) == lambda_power(2, 0));
  CHECK(indicial_polynomial(golden::ode_4d()) == lambda_power(4, 0));
  CHECK(indicial_polynomial(golden::ode_5d()) == lambda_power(5, 1));
}

TEST_CASE("ODE to recurrence") {
  // Square lattice: p_n = C(n, n/2)^2 / 4^n for even n.
  const auto rec = ode_to_recurrence(golden::ode_2d());
  std::vector<Rat> p;
  for (int n = 0; n <= 40; ++n) {
    if (n % 2) {
      p.push_back(0);
      continue;
    }
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, n / 2);
    p.push_back(Rat(b * b) / Rat(Int(1) << (2 * n)));
  }
  CHECK(all_zero(apply_recurrence(rec, p)));

  const auto rec4 = ode_to_recurrence(golden::ode_4d());
  CHECK(all_zero(apply_recurrence(rec4, series_4d().coefficients)));
}

TEST_CASE("partial sums of the 4D series") {
  const auto f = partial_sums(series_4d());
  const auto& init = golden::partial_sum_initials_4d();
  for (int n = 0; n < 6; ++n) CHECK(f[n] == init[n]);
  // The stored recurrence and the one derived from the ODE both hold.
  CHECK(all_zero(apply_recurrence(golden::partial_sum_recurrence_4d(), f.coefficients)));
  const auto closure = quotient_closure(golden::ode_4d());
  CHECK(closure.order() == 4);
  CHECK(all_zero(apply_ode_to_series(closure, f).coefficients));
  CHECK(all_zero(apply_recurrence(ode_to_recurrence(closure), f.coefficients)));
  // Forward evaluation from the initial values reproduces the counts.
  const auto ext = sequence_from(golden::partial_sum_recurrence_4d(), init, 60);
  for (int n = 0; n < 60; ++n) CHECK(ext[n] == f[n]);
}

TEST_CASE("guessing ODEs") {
  GuessOptions o2;
  o2.max_order = 3;
  o2.max_degree = 4;
  const auto g2 = guess_ode(excursion_series(Lattice::fcc(2), 60), o2);
  REQUIRE(g2);
  CHECK(*g2 == golden::ode_2d());

  GuessOptions o4;
  o4.max_order = 4;
  o4.max_degree = 10;
  const auto g4 = guess_ode(series_4d().truncated(100), o4);
  REQUIRE(g4);
  CHECK(*g4 == golden::ode_4d());
  // Soundness: the guess annihilates terms it never saw.
  CHECK(all_zero(apply_ode_to_series(*g4, series_4d()).coefficients));

  // A box that is too small for the data finds nothing.
  GuessOptions small;
  small.max_order = 2;
  small.max_degree = 3;
  CHECK_FALSE(guess_ode(series_4d().truncated(100), small));
  // Too few terms to overdetermine the box.
  CHECK_THROWS_AS(guess_ode(series_4d().truncated(20), o4), InsufficientDataError);
}

TEST_CASE("guessing recurrences") {
  const LinearRecurrence truth({IntPoly{3, 2}, IntPoly{1, 1}, IntPoly{-1}});
  const auto v = sequence_from(truth, {Rat(1), Rat(2)}, 50);
  GuessOptions o;
  o.max_order = 3;
  o.max_degree = 2;
  const auto g = guess_recurrence(v, o);
  REQUIRE(g);
  auto expected = truth;
  expected.normalize();
  CHECK(*g == expected);

  const auto longer = sequence_from(truth, {Rat(1), Rat(2)}, 80);
  CHECK(all_zero(apply_recurrence(*g, longer)));
  CHECK_THROWS_AS(guess_recurrence(std::vector<Rat>(40, Rat(0)), o), InsufficientDataError);

  // Random P-recursive sequences of order 2 and degree 2.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<IntPoly> coeffs;
    for (int i = 0; i < 3; ++i) coeffs.push_back(IntPoly{c(rng), c(rng), c(rng) == 0 ? 1 : 2});
    coeffs.back() = IntPoly{1, 1} * IntPoly{2, 1};  // nonvanishing for n >= 0
    const LinearRecurrence rec(coeffs);
    const auto seq = sequence_from(rec, {Rat(1), Rat(-1)}, 60);
    const auto guessed = guess_recurrence(seq, o);
    REQUIRE(guessed);
    CHECK(guessed->order() <= 2);
    CHECK(all_zero(apply_recurrence(*guessed, sequence_from(rec, {Rat(1), Rat(-1)}, 90))));
  }
}

TEST_CASE("operator files round trip") {
  std::stringstream ss;
  write_operator(ss, golden::ode_5d());
  CHECK(read_ode(ss) == golden::ode_5d());
  std::stringstream rs;
  write_operator(rs, golden::partial_sum_recurrence_4d());
  CHECK(read_recurrence(rs) == golden::partial_sum_recurrence_4d());
  std::stringstream bad("# lgf-op kind=ode order=2 degree=1\n1 2\n");
  CHECK_THROWS_AS(read_ode(bad), ValidationError);
}

TEST_CASE("6D ODE file validation") {
  const std::string path = "lgf_test_6d.op";
  auto write = [&](const LinearODE& ode) {
    std::ofstream out(path);
    write_operator(out, ode);
  };
  std::vector<IntPoly> c(9, IntPoly{1, 2, 3});
  IntPoly q = IntPoly::monomial(1, 25) + IntPoly{7};
  c[8] = golden::ode_6d_leading_known_part() * q;
  c[0] = IntPoly::monomial(1, 43);
  write(LinearODE(c));
  CHECK(golden::load_ode_6d(path).order() == 8);

  c[8] = IntPoly::monomial(1, 43) + IntPoly{1};
  write(LinearODE(c));
  CHECK_THROWS_AS(golden::load_ode_6d(path), ValidationError);

  write(golden::ode_5d());
  CHECK_THROWS_AS(golden::load_ode_6d(path), ValidationError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(golden::load_ode_6d(path), ValidationError);
}
