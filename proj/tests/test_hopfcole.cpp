#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "burgers/hopfcole.hpp"
#include "burgers/symcore/calculus.hpp"
#include "burgers/symcore/parse.hpp"

using namespace burgers;
using namespace burgers::hopfcole;
using symcore::parse;

namespace {

HeatSolution wave() { return heat_sum({{Rational(1), heat_constant(Rational(1))}, {Rational(1), heat_exponential(Rational(1), -1)}}); }

HeatSolution expr_heat(const std::string& text) {
  return heat_from_json({{"kind", "expression"}, {"parameters", {{"text", text}}}});
}

std::vector<HeatSolution> polys(int first, int m) {
  std::vector<HeatSolution> v;
  for (int n = first; n < first + m; ++n) v.push_back(heat_polynomial(n));
  return v;
}

double max_diff(const ExactSolution& a, const ExactSolution& b, const std::vector<Sample>& pts) {
  double worst = 0;
  for (const auto& p : pts) {
    if (a.near_singular(p.t, p.x)) continue;
    worst = std::max(worst, (a.evaluate(p.t, p.x) - b.evaluate(p.t, p.x)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("heat polynomials") {
  CHECK(heat_polynomial(0).v == symcore::Expr(1));
  CHECK(heat_polynomial(2).v == parse("x^2 + 2*t"));
  CHECK(heat_polynomial(3).v == parse("x^3 + 6*t*x"));
  for (int n = 0; n <= 10; ++n) CHECK_NOTHROW(heat_polynomial(n));
  CHECK_THROWS_AS(heat_polynomial(-1), CatalogError);
}

TEST_CASE("catalog entries satisfy the heat equation") {
  CHECK_NOTHROW(heat_sine(Rational(3, 2)));
  CHECK_NOTHROW(heat_cosine(Rational(2)));
  CHECK_NOTHROW(heat_exponential(Rational(-1, 3), 1));
  CHECK_NOTHROW(heat_gaussian(Rational(1, 2), Rational(1)));
  CHECK_NOTHROW(expr_heat("exp(t)*cosh(x)"));
  CHECK_THROWS_AS(expr_heat("x^2"), NotHeatSolution);
  CHECK_THROWS_AS(expr_heat("u[1,1]"), CatalogError);
  CHECK_THROWS_AS(heat_gaussian(Rational(0), Rational(0)), CatalogError);
  CHECK_THROWS_AS(heat_from_json({{"kind", "nope"}}), CatalogError);
}

TEST_CASE("catalog JSON round trip") {
  auto g = heat_gaussian(Rational(1, 2), Rational(-1));
  CHECK(heat_from_json(g.spec).v == g.v);
  auto w = wave();
  CHECK(heat_from_json(w.spec).v == w.v);
  auto cat = catalog_from_json(nlohmann::json::parse(R"({"v": [{"kind": "heat_polynomial", "parameters": {"n": 1}},
      {"kind": "heat_polynomial", "parameters": {"n": 2}}]})"));
  REQUIRE(cat.size() == 2);
  CHECK(cat[1].v == parse("x^2 + 2*t"));
}

TEST_CASE("linear system layout") {
  auto s = hopfcole_matrix(1, {wave()});
  CHECK(s.a(0, 0) == wave().v);
  CHECK(s.b(0) == symcore::Expr(-2) * symcore::total_derivative(wave().v, symcore::Var::x));
  auto s2 = hopfcole_matrix(2, polys(1, 2));
  CHECK(s2.a(1, 1) == parse("-4*x"));
  CHECK(s2.b(1) == symcore::Expr(8));
}

TEST_CASE("scalar case reduces to -2 v_x / v") {
  for (const auto& v : {wave(), expr_heat("exp(t)*cosh(x)"), heat_gaussian(Rational(1), Rational(0))}) {
    auto sol = solve_exact(1, {v});
    CHECK(sol.component(1) == symcore::Expr(-2) * symcore::total_derivative(v.v, symcore::Var::x) / v.v);
  }
}

TEST_CASE("traveling wave") {
  auto sol = solve_exact(1, {wave()});
  CHECK(sol.evaluate(0, 0)(0) == doctest::Approx(1.0));
  for (double x : {-2.0, 0.5, 3.0}) {
    double e = std::exp(0.3 - x);
    CHECK(sol.evaluate(0.3, x)(0) == doctest::Approx(2 * e / (1 + e)));
  }
  auto rep = certify(sol, sample_grid(0, 1, 5, -5, 5, 20));
  CHECK(rep.method == "symbolic");
  CHECK(rep.symbolic_zero);
  CHECK(rep.passed);
}

TEST_CASE("tanh profile") {
  auto sol = solve_exact(1, {expr_heat("exp(t)*cosh(x)")});
  for (double x : {-1.5, 0.0, 0.7}) CHECK(sol.evaluate_closed_form(0.2, x)(0) == doctest::Approx(-2 * std::tanh(x)));
  CHECK(certify(sol, sample_grid(0, 1, 4, -3, 3, 10)).symbolic_zero);
}

TEST_CASE("two-component rational solution") {
  auto sol = solve_exact(2, polys(1, 2));
  symcore::Expr d = parse("2*t - x^2");
  CHECK(sol.numerators[0] * d == parse("4*x") * sol.det);
  CHECK(sol.numerators[1] * d == symcore::Expr(8) * sol.det);
  auto u = sol.evaluate(0.1, 3.0);
  CHECK(u(0) == doctest::Approx(12.0 / (0.2 - 9.0)));
  CHECK(u(1) == doctest::Approx(8.0 / (0.2 - 9.0)));
  auto rep = certify(sol, sample_grid(0, 0.5, 10, 2, 4, 10));
  CHECK(rep.symbolic_zero);
  CHECK(rep.passed);
  auto trivial = solve_exact(2, {heat_constant(Rational(1)), heat_polynomial(1)});
  CHECK(trivial.numerators[0].is_zero());
  CHECK(trivial.numerators[1].is_zero());
}

TEST_CASE("heat-polynomial solutions for three and four components") {
  for (int m = 3; m <= 4; ++m) {
    CAPTURE(m);
    auto sol = solve_exact(m, polys(1, m));
    // The determinant zeros lie on x^2 = c t with c < 11 for both m, so
    // x in [4, 6] keeps clear of them.
    auto rep = certify(sol, sample_grid(0.05, 1, 10, 4, 6, 10));
    CHECK(rep.evaluated + rep.excluded.size() == 100);
    CHECK(rep.max_residual < 1e-10);
    CHECK(rep.passed);
    for (const auto& p : sample_grid(0.1, 0.9, 3, 0.6, 5.9, 5)) {
      if (sol.near_singular(p.t, p.x)) continue;
      auto a = sol.evaluate(p.t, p.x), b = sol.evaluate_closed_form(p.t, p.x);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9 * (1 + a.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("gauge invariance") {
  auto pts = sample_grid(0.1, 0.8, 5, 0.7, 2.7, 10);
  auto base = solve_exact(3, polys(1, 3));
  auto v = polys(1, 3);
  auto scaled = solve_exact(3, {heat_sum({{Rational(3), v[0]}}), heat_sum({{Rational(-1, 2), v[1]}}), v[2]});
  CHECK(max_diff(base, scaled, pts) < 1e-12);
  auto permuted = solve_exact(3, {v[2], v[0], v[1]});
  CHECK(max_diff(base, permuted, pts) < 1e-12);
  auto mixed = solve_exact(3, {heat_sum({{Rational(1), v[0]}, {Rational(2), v[1]}}), heat_sum({{Rational(1), v[1]}, {Rational(-1), v[2]}}),
                               heat_sum({{Rational(1), v[2]}, {Rational(1, 3), v[0]}})});
  CHECK(max_diff(base, mixed, pts) < 1e-12);
}

TEST_CASE("dependent data is rejected with a witness") {
  auto v = heat_polynomial(2);
  try {
    solve_exact(2, {v, heat_sum({{Rational(2), v}})});
    FAIL("expected SingularSystem");
  } catch (const SingularSystem& e) {
    REQUIRE(e.witness().size() == 2);
    CHECK(e.witness()[0] == doctest::Approx(1.0));
    CHECK(e.witness()[1] == doctest::Approx(-0.5));
  }
  CHECK_THROWS_AS(solve_exact(2, {expr_heat("exp(t)*cosh(x)"), expr_heat("exp(t+x) + exp(t-x)")}), SingularSystem);
}

TEST_CASE("near-singular points are excluded") {
  auto sol = solve_exact(2, polys(1, 2));
  CHECK(sol.near_singular(0.5, 1.0));
  auto rep = certify(sol, {{0.5, 1.0}, {0.1, 3.0}});
  CHECK(rep.excluded.size() == 1);
  CHECK(rep.evaluated == 1);
}

TEST_CASE("csv export") {
  auto sol = solve_exact(2, polys(1, 2));
  auto csv = to_csv(sol, {{0.5, 1.0}, {0.0, 2.0}});
  CHECK(csv.rfind("t,x,u_1,u_2\n0.5,1,nan,nan\n0,2,", 0) == 0);
  CHECK(sol.to_json()["components"]["u2"]["numerator"].is_string());
}
