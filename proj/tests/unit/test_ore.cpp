#include <random>

#include "doctest.h"
#include "lgf/error.hpp"
#include "lgf/golden.hpp"
#include "lgf/ode_ops.hpp"
#include "lgf/ore.hpp"

using namespace lgf;

namespace {

const std::vector<std::string> xyz = {"x", "y", "z"};
const std::vector<std::string> v2 = {"x1", "x2", "z"};

OrePolynomial op(const std::string& s, const std::vector<std::string>& names = xyz) { return parse_ore(s, names); }

bool same(const OrePolynomial& a, const OrePolynomial& b) { return (a - b).is_zero(); }

OrePolynomial random_op(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2), pick(0, 2);
  OrePolynomial r(3);
  for (int t = 0; t < 3; ++t) {
    Exponents mono(3), part(3);
    for (int v = 0; v < 3; ++v) mono[v] = e(rng);
    part[pick(rng)] = e(rng);
    FactoredRatFunc coeff(MPoly::monomial(3, mono, Rat(c(rng))) + MPoly::constant(3, Rat(c(rng))));
    if (t == 0) coeff.divide(MPoly::variable(3, 0) + MPoly::constant(3, 1));
    r.add_term(part, coeff);
  }
  return r;
}

IntegrandSpec fcc2() { return IntegrandSpec::fcc(2); }

}  // namespace

TEST_CASE("commutation rules") {
  CHECK(same(op("Dz*z") - op("z*Dz"), op("1")));
  CHECK(same(op("Dx*x^2"), op("x^2*Dx+2*x")));
  CHECK(same(op("Dx*y"), op("y*Dx")));
  CHECK(same(op("Dx*Dy"), op("Dy*Dx")));
  CHECK(same(op("Dx*(1/x)"), op("(1/x)*Dx-1/x^2")));
  CHECK(op("Dx^2*Dz+x").order() == 3);
  CHECK(op("Dx^2*Dz+x").order(0) == 2);
}

TEST_CASE("operator products are associative and distributive") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_op(rng), b = random_op(rng), c = random_op(rng);
    CHECK(same((a * b) * c, a * (b * c)));
    CHECK(same(a * (b + c), a * b + a * c));
    CHECK(same((a + b) * c, a * c + b * c));
  }
}

TEST_CASE("parser rejects bad operators") {
  CHECK_THROWS_AS(op("Dw"), ValidationError);
  CHECK_THROWS_AS(op("1/Dx"), ValidationError);
  CHECK_THROWS_AS(op("(x+"), ValidationError);
  CHECK_THROWS_AS(op("x/0"), ValidationError);
}

TEST_CASE("2D annihilators of the integrand") {
  const auto& ex = golden::two_dim_example();
  for (const auto& g : {ex.g1, ex.g2, ex.g3})
    CHECK(apply_operator_to_integrand(op(g, v2), fcc2()).value.is_zero());
  // D_x1 f / f = z x2 / (1 - z x1 x2) + x1 / (1 - x1^2).
  const auto r = apply_operator_to_integrand(op("Dx1", v2), fcc2()).value;
  const auto expected = parse_ore("z*x2/(1-z*x1*x2)+x1/(1-x1^2)", v2).terms().begin()->second;
  CHECK((r - expected).is_zero());
  CHECK(apply_operator_to_integrand(OrePolynomial(3), fcc2()).value.is_zero());
  CHECK_FALSE(apply_operator_to_integrand(op("Dz", v2), fcc2()).value.is_zero());
}

TEST_CASE("telescoper is a left combination of the annihilators") {
  const auto& ex = golden::two_dim_example();
  const auto g1 = op(ex.g1, v2), g2 = op(ex.g2, v2), g3 = op(ex.g3, v2);
  const auto c1 = op(ex.cofactor_1, v2), c23 = op(ex.cofactor_23, v2);
  const auto combo = op("z", v2) * g2 + g3;
  const auto target =
      op(ex.telescoper, v2) + op("Dx1", v2) * op(ex.delta_x1, v2) + op("Dx2", v2) * op(ex.delta_x2, v2);
  CHECK(same(c1 * g1 + c23 * combo, target));
  CHECK(spot_check_combination({{c1, g1}, {c23, combo}}, target));
  CHECK_FALSE(spot_check_combination({{c1, g1}, {c23, combo}}, target + op("1", v2)));
}

TEST_CASE("2D creative telescoping certificate") {
  const auto& ex = golden::two_dim_example();
  const auto A = op(ex.telescoper, v2);
  const std::vector<std::pair<int, OrePolynomial>> deltas = {{0, op(ex.delta_x1, v2)}, {1, op(ex.delta_x2, v2)}};
  CHECK(certify_telescoper(A, deltas, fcc2()));
  CHECK(spot_check_certificate(A, deltas, fcc2()));
  CHECK_FALSE(certify_telescoper(A + op("1", v2), deltas, fcc2()));
  CHECK_FALSE(spot_check_certificate(A + op("1", v2), deltas, fcc2()));
  CHECK_THROWS_AS(certify_telescoper(A + op("x1*Dz", v2), deltas, fcc2()), ValidationError);
  // The telescoper is the square-lattice ODE.
  CHECK(ode_from_ore(parse_ore(ex.telescoper, {"z"})) == golden::ode_2d());
}

TEST_CASE("stepwise telescoping") {
  const auto g = HyperexponentialFunction::from_integrand(fcc2());
  const auto t1 = op("(x2^2*z^2-1)*Dz+x2^2*z", v2);
  const auto t2 = op("(x2^2-1)*(x2^2*z^2-1)*Dx2+x2*(2*x2^2*z^2-z^2-1)", v2);
  CHECK(certify_telescoper(t1, {{0, op("(x1^2-1)*x2", v2)}}, g));
  CHECK(certify_telescoper(t2, {{0, op("(x1^2-1)*(x2^2-1)*z", v2)}}, g));
  CHECK(spot_check_certificate(t1, {{0, op("(x1^2-1)*x2", v2)}}, g));

  // Second stage acts on the x1-integral, given by t1 and t2.
  const auto h = HyperexponentialFunction::from_annihilators(3, {t1, t2});
  CHECK_FALSE(h.log_derivative[0].depends_on(0));
  CHECK(h.log_derivative[0].is_zero());
  const auto A = op("z*(z^2-1)*Dz^2+(3*z^2-1)*Dz+z", v2);
  const auto B = op("-x2*z*(x2^2-1)/(x2^2*z^2-1)", v2);
  CHECK(certify_telescoper(A, {{1, B}}, h));
  CHECK(spot_check_certificate(A, {{1, B}}, h));
  CHECK_FALSE(certify_telescoper(A, {{1, B + op("1", v2)}}, h));

  // Incompatible first-order operators.
  CHECK_THROWS_AS(HyperexponentialFunction::from_annihilators(3, {op("Dz-x2", v2), op("Dx2-1", v2)}),
                  ValidationError);
}

TEST_CASE("incremental check matches the one-shot result") {
  const auto& ex = golden::two_dim_example();
  TelescopingCheck check(HyperexponentialFunction::from_integrand(fcc2()), {0, 1});
  check.add_telescoper(op("z*(z^2-1)*Dz^2", v2));
  check.add_telescoper(op("(3*z^2-1)*Dz", v2));
  CHECK_FALSE(check.holds());
  check.add_telescoper(op("z", v2));
  check.add_delta(0, op(ex.delta_x1, v2));
  check.add_delta(1, op(ex.delta_x2, v2));
  CHECK(check.holds());
  CHECK_THROWS_AS(check.add_delta(2, op("1", v2)), ValidationError);
  CHECK_THROWS_AS(check.add_telescoper(op("Dx1", v2)), ValidationError);
}

TEST_CASE("ODE and operator conversions") {
  const auto& L = golden::ode_4d();
  const auto o = ore_from_ode(L);
  CHECK(o.order() == 4);
  CHECK(ode_from_ore(o) == L);
  // (1-z) P is annihilated by L * (1-z)^{-1}; dividing P by (1-z) means
  // composing with multiplication by (1-z).
  CHECK(ode_from_ore(o * parse_ore("1-z", {"z"})) == quotient_closure(L));
  CHECK_THROWS_AS(ode_from_ore(op("x*Dz")), ValidationError);
}

TEST_CASE("local series arithmetic") {
  const std::vector<Rat> p = {Rat(1, 3), Rat(-1, 5), Rat(1, 7)};
  const auto r = parse_ore("1/(1-x*y*z)", xyz).terms().begin()->second;
  const auto s = expand_at(r, p, 4);
  const auto one = s * expand_at(MPoly::constant(3, 1) - parse_mpoly("x*y*z", xyz), p, 4);
  CHECK(one.constant_term() == 1);
  for (const auto& [e, c] : one.terms())
    if (e != Exponents(3, 0)) CHECK(c == 0);
  CHECK(s.constant_term() == r.eval(p));
  // d/dx of the expansion matches the expansion of the derivative.
  const auto ds = s.derivative(0);
  const auto dr = expand_at(r.derivative(0), p, 3);
  for (const auto& [e, c] : dr.terms()) CHECK(ds.coefficient(e) == c);
}
