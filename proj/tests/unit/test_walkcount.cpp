#include <map>
#include <sstream>

#include "doctest.h"
#include "lgf/analytic_series.hpp"
#include "lgf/error.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;

namespace {

// Endpoint histogram of all |S|^n step sequences.
std::map<Point, long> brute_force_endpoints(const StepSet& steps, int n) {
  std::map<Point, long> hist;
  Point pos(steps.dimension(), 0);
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      ++hist[pos];
      return;
    }
    for (const auto& s : steps.steps()) {
      for (std::size_t j = 0; j < pos.size(); ++j) pos[j] += s[j];
      self(self, left - 1);
      for (std::size_t j = 0; j < pos.size(); ++j) pos[j] -= s[j];
    }
  };
  rec(rec, n);
  return hist;
}

void for_each_point(int d, int r, const std::function<void(const Point&)>& f) {
  Point p(d, -r);
  while (true) {
    f(p);
    int j = 0;
    while (j < d && p[j] == r) p[j++] = -r;
    if (j == d) return;
    ++p[j];
  }
}

}  // namespace

TEST_CASE("single steps") {
  Lattice lat = Lattice::fcc(3);
  WalkTable t = count_walk_table(lat, 3);
  for (const auto& s : lat.step_set().steps()) CHECK(t.value(1, s) == 1);
  CHECK(t.value(1, Point{0, 0, 0}) == 0);
  CHECK(t.value(1, Point{2, 0, 0}) == 0);
  CHECK(t.value(0, Point{0, 0, 0}) == 1);
  CHECK(t.value(0, Point{1, 1, 0}) == 0);
}

TEST_CASE("table agrees with brute force enumeration") {
  for (int d = 2; d <= 4; ++d) {
    Lattice lat = Lattice::fcc(d);
    const int N = d == 4 ? 4 : 6;
    WalkTable t = count_walk_table(lat, N, {.radius_cut = N});
    for (int n = 0; n <= N; ++n) {
      auto hist = brute_force_endpoints(lat.step_set(), n);
      for (const auto& [x, count] : hist) CHECK(t.value(n, x) == count);
    }
  }
  auto hist = brute_force_endpoints(fcc_step_set(2), 4);
  CHECK(hist[Point{0, 0}] == 36);
}

TEST_CASE("parity, symmetry and mass conservation") {
  for (int d = 2; d <= 4; ++d) {
    Lattice lat = Lattice::fcc(d);
    const int N = 8;
    WalkTable t = count_walk_table(lat, N, {.radius_cut = N});
    for (int n = 0; n <= N; ++n) {
      Int mass = 0;
      for (std::size_t i = 0; i < t.wedge_points().size(); ++i) {
        const Point& x = t.wedge_points()[i];
        mass += t.value(n, x) * orbit_size(x);
      }
      CHECK(mass == power(Int(lat.coordination_number()), n));
    }
    // Full-lattice check of parity and symmetry on a small box.
    for_each_point(d, 3, [&](const Point& x) {
      int sum = 0;
      for (int v : x) sum += v;
      if (sum % 2 != 0) {
        CHECK(t.value(5, x) == 0);
        return;
      }
      Point y(x.rbegin(), x.rend());
      y[0] = -y[0];
      CHECK(t.value(6, x) == t.value(6, y));
    });
  }
}

TEST_CASE("excursion counts") {
  auto a4 = count_excursions(Lattice::fcc(4), 5);
  for (int n = 0; n <= 5; ++n) {
    auto hist = brute_force_endpoints(fcc_step_set(4), n);
    CHECK(a4[n] == hist[Point{0, 0, 0, 0}]);
  }
  CHECK(a4[2] == 24);

  auto a2 = count_excursions(Lattice::fcc(2), 20);
  for (int n = 0; n <= 10; ++n) {
    Int c = binomial(2 * n, n);
    CHECK(a2[2 * n] == c * c);
    CHECK(a2[2 * n + 1 <= 20 ? 2 * n + 1 : 1] == 0);
  }
  auto brute = brute_force_endpoints(fcc_step_set(2), 10);
  CHECK(a2[10] == brute[Point{0, 0}]);
}

TEST_CASE("partial sums in four dimensions") {
  ExactSeries p = excursion_series(Lattice::fcc(4), 5);
  ExactSeries f = partial_sums(p);
  std::vector<Rat> expected = {Rat(1), Rat(1), Rat(25, 24), Rat(19, 18), Rat(1637, 1536), Rat(549, 512)};
  CHECK(f.coefficients == expected);
}

TEST_CASE("excursion mode matches table mode and radius growth") {
  for (int d = 2; d <= 5; ++d) {
    Lattice lat = Lattice::fcc(d);
    const int N = d == 5 ? 10 : 14;
    auto a = count_excursions(lat, N);
    WalkTable t = count_walk_table(lat, N);
    auto wider = count_excursions(lat, N, {.radius_cut = (N + 1) / 2 + 3});
    Point origin(d, 0);
    for (int n = 0; n <= N; ++n) CHECK(a[n] == t.value(n, origin));
    CHECK(a == wider);
  }
}

TEST_CASE("walkcount agrees with the multinomial expansion") {
  for (int d = 2; d <= 4; ++d) {
    auto a = count_excursions(Lattice::fcc(d), 12);
    auto b = excursion_counts_wallis(d, 12);
    CHECK(a == b);
  }
}

TEST_CASE("threads give identical results") {
  Lattice lat = Lattice::fcc(4);
  auto a = count_excursions(lat, 24);
  auto b = count_excursions(lat, 24, {.threads = 3});
  CHECK(a == b);
}

TEST_CASE("memory budget") {
  Lattice lat = Lattice::fcc(4);
  try {
    count_walk_table(lat, 30, {.memory_budget = 4096});
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("n=") != std::string::npos);
  }
}

TEST_CASE("sequence dump round trip") {
  std::vector<Int> values = {1, 0, 4, 0, 36};
  std::ostringstream os;
  write_sequence(os, {2, 4, 0}, values);
  CHECK(os.str() == "# lgf-seq d=2 c=4 N=4\n1\n0\n4\n0\n36\n");
  std::istringstream is(os.str());
  SequenceDump dump = read_sequence(is);
  CHECK(dump.header.N == 4);
  CHECK(dump.values[4] == 36);
  std::ostringstream rs;
  write_sequence(rs, {4, 24, 0}, std::vector<Rat>{Rat(1), Rat(25, 24)});
  CHECK(rs.str() == "# lgf-seq d=4 c=24 N=1\n1\n25/24\n");
}
