#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/multistep.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;

TEST_CASE("schedules parse and are validated") {
  CHECK(parse_schedule("2,1,2") == std::vector<int>{2, 1, 2});
  CHECK_THROWS_AS(parse_schedule("2,x"), ValidationError);
  CHECK_THROWS_AS(parse_schedule(""), ValidationError);
  auto lat = Lattice::fcc(3);
  CHECK_THROWS_AS(multi_step_pipeline(lat, default_multistep_config(3, {1, 1}), 10), ValidationError);
  auto cfg = default_multistep_config(3, {1, 1, 1});
  cfg.stages.pop_back();
  CHECK_THROWS_AS(multi_step_pipeline(lat, cfg, 10), ValidationError);
}

TEST_CASE("2D multi-step reproduces the squared central binomials") {
  auto res = multi_step_pipeline(Lattice::fcc(2), default_multistep_config(2, {1, 1}), 60);
  REQUIRE(res.counts.size() == 61);
  for (int n = 0; n <= 60; ++n) {
    if (n % 2) {
      CHECK(res.counts[n] == 0);
    } else {
      Int b = binomial(n, n / 2);
      CHECK(res.counts[n] == b * b);
    }
  }
  CHECK(res.cross_checked == 13);
}

TEST_CASE("3D multi-step agrees with direct counting") {
  auto res = multi_step_pipeline(Lattice::fcc(3), default_multistep_config(3, {1, 1, 1}), 50);
  CHECK(res.counts == count_excursions(Lattice::fcc(3), 50));
  REQUIRE(res.stages.size() == 2);
  CHECK(res.stages[0].variables == 2);
  CHECK(res.stages[1].variables == 1);
}

TEST_CASE("5D multi-step with schedule 2,1,2 agrees with direct counting") {
  auto res = multi_step_pipeline(Lattice::fcc(5), default_multistep_config(5, {2, 1, 2}), 60);
  auto direct = count_excursions(Lattice::fcc(5), 24);
  for (int n = 0; n <= 24; ++n) CHECK(res.counts[n] == direct[n]);
  CHECK(res.cross_checked == 17);
  CHECK(res.stages[0].extension.walked > 0);
}

TEST_CASE("a single drop is plain counting") {
  auto res = multi_step_pipeline(Lattice::fcc(4), default_multistep_config(4, {4}), 8);
  CHECK(res.counts == count_excursions(Lattice::fcc(4), 8));
}
