#include "doctest.h"
#include "lgf/analytic_series.hpp"
#include "lgf/error.hpp"

using namespace lgf;

TEST_CASE("wallis moments") {
  CHECK(wallis_moment(0) == 1);
  CHECK(wallis_moment(1) == Rat(1, 2));
  CHECK(wallis_moment(3) == Rat(5, 16));
  WallisCache cache(10);
  for (unsigned long n = 0; n <= 10; ++n) CHECK(cache(n) * power(Int(4), n) == binomial(2 * n, n));
}

TEST_CASE("low-order coefficients") {
  for (int d = 2; d <= 5; ++d) {
    ExactSeries s = lgf_series_wallis(d, 3);
    CHECK(s[0] == 1);
    CHECK(s[1] == 0);
  }
  CHECK(lgf_series_wallis(2, 2)[2] == Rat(1, 4));
}

TEST_CASE("two-dimensional closed form") {
  auto a = excursion_counts_wallis(2, 16);
  for (int n = 0; n <= 8; ++n) {
    Int c = binomial(2 * n, n);
    CHECK(a[2 * n] == c * c);
  }
}

TEST_CASE("threads and budget") {
  CHECK(excursion_counts_wallis(4, 14) == excursion_counts_wallis(4, 14, {.threads = 3}));
  CHECK_THROWS_AS(excursion_counts_wallis(6, 40, {.max_compositions = 1000}), ResourceError);
}
