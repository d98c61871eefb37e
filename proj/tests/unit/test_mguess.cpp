#include <sstream>

#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/mguess.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;

namespace {

SliceTable fcc_slice(int d, int k, int N) {
  WalkCountOptions opt;
  opt.radius_cut = N;
  return slice_from_walks(count_walk_table(Lattice::fcc(d), N, opt), k, N);
}

MultivariateRecurrence::Term term(std::vector<int> shift, const std::string& coeff) {
  return {std::move(shift), parse_mpoly(coeff, {"n", "x1", "x2", "x3"})};
}

// The 18-term recurrence printed for b_n(x1,x2,x3) = a_n(x1,x2,x3,0,0) in 5D.
MultivariateRecurrence reference_5d_recurrence() {
  MultivariateRecurrence r;
  r.nvars = 3;
  r.terms = {
      term({0, 0, 3, 1}, "n+1"),   term({0, 0, 1, 3}, "-(n+1)"), term({0, 1, 0, 3}, "n+1"),
      term({0, 1, 3, 0}, "-(n+1)"), term({0, 1, 3, 4}, "n+1"),   term({0, 1, 4, 3}, "-(n+1)"),
      term({0, 3, 0, 1}, "-(n+1)"), term({0, 3, 1, 0}, "n+1"),   term({0, 3, 1, 4}, "-(n+1)"),
      term({0, 3, 4, 1}, "n+1"),   term({0, 4, 1, 3}, "n+1"),   term({0, 4, 3, 1}, "-(n+1)"),
      term({1, 1, 2, 3}, "x2+2"),  term({1, 1, 3, 2}, "-(x3+2)"), term({1, 2, 1, 3}, "-(x1+2)"),
      term({1, 2, 3, 1}, "x1+2"),  term({1, 3, 1, 2}, "x3+2"),  term({1, 3, 2, 1}, "-(x2+2)"),
  };
  return r;
}

bool annihilates(const MultivariateRecurrence& r, const SliceTable& t, int max_n, int pad) {
  const int T = r.time_order();
  Point x(r.nvars);
  for (int n = 0; n + T <= max_n; ++n) {
    const int lo = -(n + T + pad), hi = n + T + pad;
    std::fill(x.begin(), x.end(), lo);
    while (true) {
      if (r.apply(t, n, x) != 0) return false;
      int j = 0;
      while (j < r.nvars && x[j] == hi) x[j++] = lo;
      if (j == r.nvars) break;
      ++x[j];
    }
  }
  return true;
}

}  // namespace

TEST_CASE("slice table stores canonical points and knows its reach") {
  SliceTable s = fcc_slice(3, 2, 6);
  CHECK(s.layer_count() == 7);
  CHECK(s.value(2, Point{0, 0}) == 12);
  CHECK(s.value(3, Point{1, -1}) == s.value(3, Point{-1, 1}));
  CHECK(s.value(3, Point{1, 0}) == 0);  // odd coordinate sum
  CHECK(*s.find(2, Point{5, 0}) == 0);   // out of reach
  CHECK(s.layer_complete(6));
  SliceTable axis = s.restricted(1);
  CHECK(axis.nvars() == 1);
  CHECK(axis.value(4, Point{2}) == s.value(4, Point{2, 0}));
  CHECK_THROWS_AS(s.value(7, Point{0, 0}), InsufficientDataError);
}

TEST_CASE("the reference 5D slice recurrence annihilates the counted slice") {
  SliceTable b = fcc_slice(5, 3, 15);
  auto r = reference_5d_recurrence();
  CHECK(r.time_order() == 1);
  CHECK(annihilates(r, b, 15, 5));
  // Perturbing one coefficient breaks the identity.
  r.terms[0].coefficient = parse_mpoly("n+2", {"n", "x1", "x2", "x3"});
  CHECK_FALSE(annihilates(r, b, 15, 5));
}

TEST_CASE("guessing on a full table recovers the walk recurrence") {
  SliceTable a = fcc_slice(2, 2, 12);
  auto recs = guess_multivariate_recurrence(a, {1, 1, 0, 0, -1});
  REQUIRE(recs.size() == 1);
  // a_{n+1}(x) = sum over the four diagonal steps of a_n(x - s).
  MultivariateRecurrence walk;
  walk.nvars = 2;
  auto c = [](const char* e) { return parse_mpoly(e, {"n", "x1", "x2"}); };
  walk.terms = {{{0, -1, -1}, c("-1")}, {{0, -1, 1}, c("-1")}, {{0, 1, -1}, c("-1")},
                {{0, 1, 1}, c("-1")},   {{1, 0, 0}, c("1")}};
  walk.normalize();
  CHECK(recs[0].to_string() == walk.to_string());
}

TEST_CASE("guessed recurrences annihilate layers beyond those used to find them") {
  SliceTable b = fcc_slice(3, 2, 22);
  MultiGuessOptions opt;
  opt.max_layer = 14;
  auto recs = guess_multivariate_recurrence(b, {2, 1, 1, 1, -1}, opt);
  REQUIRE_FALSE(recs.empty());
  for (const auto& r : recs) CHECK(annihilates(r, b, 22, 3));
}

TEST_CASE("all-zero tables are rejected") {
  SliceTable z(1, 2, true);
  z.resize_layers(12);
  for (int n = 0; n < 12; ++n)
    for (const auto& p : z.reach_points(n)) z.set(n, p, 0);
  CHECK_THROWS_AS(guess_multivariate_recurrence(z, {1, 1, 1, 1, -1}), InsufficientDataError);
}

TEST_CASE("multivariate recurrences round-trip through the exchange format") {
  auto r = reference_5d_recurrence();
  r.normalize();
  std::stringstream ss;
  write_multivariate(ss, r);
  CHECK(ss.str().rfind("# lgf-op kind=mrec", 0) == 0);
  auto back = read_multivariate(ss);
  CHECK(back.to_string() == r.to_string());
  std::stringstream again;
  write_multivariate(again, back);
  CHECK(again.str() == ss.str());
}

TEST_CASE("extension reproduces stored layers and detects contradictions") {
  SliceTable b = fcc_slice(3, 2, 24);
  MultiGuessOptions opt;
  opt.max_layer = 14;
  auto recs = guess_multivariate_recurrence(b, {2, 1, 1, 1, -1}, opt);
  SliceTable copy = b;
  auto rep = extend_slice(copy, recs, 2, 24, &Lattice::fcc(3).step_set());
  CHECK(rep.checked > 0);
  CHECK(rep.seeded == 0);

  SliceTable bad = b;
  bad.set(20, Point{4, 2}, bad.value(20, Point{4, 2}) + 1);
  CHECK_THROWS_AS(extend_slice(bad, recs, 2, 24, &Lattice::fcc(3).step_set()), VerificationError);
}

TEST_CASE("extension beyond the data needs an applicable recurrence") {
  // The reference recurrence cannot be solved for b_n(0,0,0): its leading
  // coefficients vanish there.
  SliceTable b = fcc_slice(5, 3, 15);
  CHECK_THROWS_AS(extend_slice(b, {reference_5d_recurrence()}, 15, 17), InsufficientDataError);
}
