#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lgf/certificate.hpp"
#include "lgf/error.hpp"
#include "lgf/golden.hpp"

using namespace lgf;

namespace {

CertificateReport check(const std::string& text, std::optional<int> d = std::nullopt) {
  std::istringstream in(text);
  return verify_certificate(in, d);
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("2D certificates verify") {
  for (const auto* text : {&golden::certificate_2d(), &golden::certificate_2d_stage_z(),
                           &golden::certificate_2d_stage_x2(), &golden::certificate_2d_second_stage()}) {
    const auto rep = check(*text, 2);
    CHECK(rep.holds);
    CHECK(rep.spot_check_agrees);
    CHECK(rep.spot_points > 0);
    CHECK(rep.first_failing_term.empty());
  }
  const auto rep = check(golden::certificate_2d());
  CHECK(rep.operator_lines == 5);
  CHECK(rep.integration_variables == std::vector<std::string>{"x1", "x2"});
  CHECK_FALSE(rep.custom_function);
  CHECK(check(golden::certificate_2d_second_stage()).custom_function);
}

TEST_CASE("corrupted certificates are rejected") {
  const auto bad = replace(golden::certificate_2d(), "(3*z^2-1)*Dz", "(3*z^2+1)*Dz");
  const auto rep = check(bad);
  CHECK_FALSE(rep.holds);
  CHECK_FALSE(rep.first_failing_term.empty());
  CHECK(rep.spot_check_agrees);  // the numeric check fails as well

  // Dropping a delta part.
  auto text = golden::certificate_2d();
  text = text.substr(0, text.find("delta x2"));
  CHECK_FALSE(check(text).holds);
}

TEST_CASE("malformed certificates") {
  CHECK_THROWS_AS(check(""), ValidationError);
  CHECK_THROWS_AS(check("telescoper\nz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert integrate=x1\ntelescoper\nz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2\ntelescoper\nz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x9\ntelescoper\nz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x1\nz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x1\ndelta x1\nx1\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x1\ntelescoper\nz*(\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x1\ntelescoper\nx1*Dz\n"), ValidationError);
  CHECK_THROWS_AS(check("# lgf-cert d=2 integrate=x1\ntelescoper\nz\ndelta x2\n1\n"), ValidationError);
  CHECK_THROWS_AS(check(golden::certificate_2d(), 3), ValidationError);
  try {
    check("# lgf-cert d=2 integrate=x1\ntelescoper\nz\n\n# comment\nDq\n");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
}

TEST_CASE("bundled certificate files match the embedded copies") {
  const std::string dir = std::string(LGF_TEST_DATA_DIR) + "/../../data/certificates/";
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(dir + "fcc2d.cert") == golden::certificate_2d());
  CHECK(slurp(dir + "fcc2d_stage_dz.cert") == golden::certificate_2d_stage_z());
  CHECK(slurp(dir + "fcc2d_stage_dx2.cert") == golden::certificate_2d_stage_x2());
  CHECK(slurp(dir + "fcc2d_second_stage.cert") == golden::certificate_2d_second_stage());
  CHECK(verify_certificate_file(dir + "fcc2d.cert", 2).holds);
  CHECK_THROWS_AS(verify_certificate_file(dir + "missing.cert"), ValidationError);
}
