#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/lattice.hpp"

using namespace lgf;

TEST_CASE("fcc step set in two dimensions") {
  StepSet s = fcc_step_set(2);
  std::vector<Point> expected = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  CHECK(s.steps() == expected);
}

TEST_CASE("fcc step set sizes and symmetry") {
  CHECK(fcc_step_set(3).size() == 12);
  CHECK(fcc_step_set(6).size() == 60);
  for (int d = 2; d <= 8; ++d) {
    StepSet s = fcc_step_set(d);
    CHECK(s.size() == static_cast<std::size_t>(2 * d * (d - 1)));
    std::set<Point> all(s.steps().begin(), s.steps().end());
    CHECK(all.size() == s.size());
    CHECK(std::is_sorted(s.steps().begin(), s.steps().end()));
    for (const auto& p : s.steps()) {
      Point neg = p;
      for (int& v : neg) v = -v;
      CHECK(all.count(neg) == 1);
      Point swapped = p;
      std::swap(swapped[0], swapped[d - 1]);
      CHECK(all.count(swapped) == 1);
      int nonzero = 0;
      for (int v : p) nonzero += v != 0;
      CHECK(nonzero == 2);
    }
    CHECK(Lattice::fcc(d).coordination_number() == 2 * d * (d - 1));
  }
}

TEST_CASE("invalid dimension") {
  CHECK_THROWS_AS(fcc_step_set(1), ValidationError);
  CHECK_THROWS_AS(fcc_step_set(0), ValidationError);
}

TEST_CASE("structure function values") {
  StructureFunction sf(3);
  CHECK(sf.pairs().size() == 3);
  CHECK(sf.normalization() == Rat(1, 3));
  std::vector<double> zero(3, 0.0), pi(3, M_PI);
  CHECK(sf.eval(zero) == doctest::Approx(1.0));
  CHECK(sf.eval(pi) == doctest::Approx(1.0));
  StructureFunction sf2(2);
  std::vector<double> k = {0.3, 1.1};
  CHECK(sf2.eval(k) == doctest::Approx(std::cos(0.3) * std::cos(1.1)));
  std::vector<double> bad(2, 0.0);
  CHECK_THROWS_AS(sf.eval(bad), ValidationError);
}

TEST_CASE("structure function matches the Fourier form of the step distribution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int d = 2; d <= 6; ++d) {
    StructureFunction sf(d);
    StepSet steps = fcc_step_set(d);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> k(d);
      for (auto& v : k) v = u(rng);
      double dft = 0;
      for (const auto& s : steps.steps()) {
        double dot = 0;
        for (int j = 0; j < d; ++j) dot += k[j] * s[j];
        dft += std::cos(dot);
      }
      dft /= static_cast<double>(steps.size());
      CHECK(std::abs(sf.eval(k) - dft) < 1e-12);
      CHECK(std::abs(fourier_structure_function(steps, k) - dft) < 1e-12);
    }
  }
}
