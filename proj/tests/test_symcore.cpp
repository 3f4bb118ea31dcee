#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "burgers/symcore/calculus.hpp"
#include "burgers/symcore/collect.hpp"
#include "burgers/symcore/eigen_support.hpp"
#include "burgers/symcore/eval.hpp"
#include "burgers/symcore/parse.hpp"
#include "burgers/symcore/substitute.hpp"
#include "burgers/symcore/upoly.hpp"

using namespace burgers;
using namespace burgers::symcore;

namespace {
Expr P(const char* s) { return parse(s, ParseContext{{"a", "b", "k"}, false}); }
}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(4), RationalOverflow);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("canonical form makes equal expressions identical") {
  Expr u = jet(1, 1), v = jet(1, 2);
  CHECK((u + v) * (u - v) == u * u - v * v);
  CHECK(pow(u + v, 2) - u * u - v * v == Expr(2) * u * v);
  CHECK((u - u).is_zero());
  CHECK(to_string(Expr(3) * u * u + Rational(-1, 2)) == "3*u[1,1]^2 - 1/2");
}

TEST_CASE("exp and pow merge") {
  Expr t = t_var(), x = x_var();
  CHECK(exp(t) * exp(-t) == Expr(1));
  CHECK(exp(t) * exp(x) == exp(t + x));
  CHECK(Expr(1) / exp(x) == exp(-x));
  Expr s = t + x * x;
  CHECK(rpow(s, Rational(1, 2)) * rpow(s, Rational(1, 2)) == s);
  CHECK(rpow(s, Rational(-1, 2)) * rpow(s, Rational(-1, 2)) == Expr(1) / s);
  CHECK(sin(Expr(0)).is_zero());
  CHECK(cosh(Expr(0)) == Expr(1));
}

TEST_CASE("total derivatives follow the jet and chain rules") {
  Expr u = jet(1, 1);
  CHECK(total_derivative(u * u, Var::x) == Expr(2) * u * jet(1, 1, 0, 1));
  CHECK(total_derivative(exp(Expr(2) * x_var()), Var::x) == Expr(2) * exp(Expr(2) * x_var()));
  auto xi = FunctionSymbol::make("xi", {Atom::indep(Var::t), Atom::jet({1, 1, 0, 0})});
  Expr f = function(xi);
  Expr df = total_derivative(f, Var::t);
  CHECK(df == P("d(xi(t,u[1,1]),t) + d(xi(t,u[1,1]),u[1,1])*u[1,1]_t"));
  CHECK(partial(df, Atom::jet({1, 1, 1, 0})) == P("d(xi(t,u[1,1]),u[1,1])"));
  CHECK(total_derivative(rpow(x_var(), Rational(1, 2)), Var::x) == Expr(Rational(1, 2)) * rpow(x_var(), Rational(-1, 2)));
}

TEST_CASE("mixed partials commute on opaque functions") {
  auto f = FunctionSymbol::make("f", {Atom::indep(Var::t), Atom::indep(Var::x)});
  Expr e = function(f);
  CHECK(total_derivative(total_derivative(e, Var::t), Var::x) == total_derivative(total_derivative(e, Var::x), Var::t));
}

TEST_CASE("printer output parses back") {
  std::vector<std::string> samples = {
      "u[1,2]_tx^2*x - 3/4*t + a",
      "exp(t - 2*x)*pow(t + x^2,-1/2) + sin(x)^3",
      "d(eta(t,x,u[2,1]),u[2,1],x)*k - 1",
      "u[1,1]^-2 + tanh(x)",
  };
  for (const auto& s : samples) {
    Expr e = P(s.c_str());
    CHECK(P(to_string(e).c_str()) == e);
  }
}

TEST_CASE("parser reports errors with positions") {
  CHECK_THROWS_AS(P("u[1,1] +"), ParseError);
  CHECK_THROWS_AS(P("zeta"), ParseError);
  CHECK_THROWS_AS(P("1/0"), ParseError);
  try {
    P("t + ?");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK(parse("q*t", ParseContext{{}, true}) == param("q") * t_var());
}

TEST_CASE("substitution reaches a fixpoint and rejects cycles") {
  SubstitutionMap m;
  m.set({1, 1, 1, 0}, jet(1, 1, 0, 2) + jet(1, 2));
  m.set({1, 2, 0, 0}, x_var());
  CHECK(m.apply(jet(1, 1, 1, 0)) == jet(1, 1, 0, 2) + x_var());

  SubstitutionMap cyc;
  cyc.set({1, 1, 0, 0}, jet(1, 2));
  CHECK_THROWS_AS(cyc.set({1, 2, 0, 0}, jet(1, 1)), SubstitutionError);
  CHECK_THROWS_AS(cyc.set({1, 3, 0, 0}, jet(1, 3) + 1), SubstitutionError);

  auto f = FunctionSymbol::make("f", {Atom::indep(Var::t), Atom::indep(Var::x)});
  SubstitutionMap fm;
  fm.set_function(f, t_var() * t_var() * x_var());
  CHECK(fm.apply(P("d(f(t,x),t,x)")) == Expr(2) * t_var());
}

TEST_CASE("collect splits polynomial structure") {
  Expr e = P("a*u[1,1]_x^2 + b*u[1,1]_x + 3*u[1,1]_x*u[1,2]_x + a - 1");
  auto c = collect(e, [](const Atom& at) { return at.kind() == Atom::Kind::Jet && at.jet().nx == 1; });
  CHECK(c.size() == 4);
  Monomial one;
  CHECK(c.at(one) == P("a - 1"));
  auto g = FunctionSymbol::make("g", {Atom::jet({1, 1, 0, 1})});
  CHECK_THROWS_AS(collect(function(g), jets_of_tier(1)), NonPolynomialError);
  CHECK_THROWS_AS(collect(Expr(1) / jet(1, 1), jets_of_tier(1)), NonPolynomialError);
}

TEST_CASE("numeric evaluation matches exact values") {
  Valuation<double> at;
  at.t = 0.5;
  at.x = -1.25;
  at.jets[{1, 1, 0, 1}] = 3.0;
  at.params["a"] = 2.0;
  Expr e = P("a*u[1,1]_x^2 - exp(t)*x + pow(t,1/2)");
  CHECK(evaluate(e, at) == doctest::Approx(18.0 + std::exp(0.5) * 1.25 + std::sqrt(0.5)));
  CHECK_THROWS_AS(evaluate(P("u[1,2]"), at), EvaluationError);
}

TEST_CASE("univariate polynomials") {
  Atom k = Atom::param("k");
  UPoly p = UPoly::from_expr(P("-k*(k-1)*(2*k+1)/3"), k);
  CHECK(p.primitive().str("k") == "2*k^3 - k^2 - k");
  UPoly q = UPoly::from_expr(P("4*k^2 + 2*k"), k);
  CHECK(gcd(p, q).str("k") == "2*k^2 + k");
  auto roots = gcd(p, q).rational_roots();
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rational(-1, 2));
  CHECK(roots[1] == Rational(0));
}

TEST_CASE("symbolic Eigen matrices") {
  ExprMatrix a(2, 2), b(2, 2);
  a << jet(1, 1), Expr(1), Expr(0), x_var();
  b << Expr(1), Expr(0), t_var(), jet(1, 2);
  ExprMatrix c = multiply(a, b);
  CHECK(c(0, 0) == jet(1, 1) + t_var());
  CHECK(c(1, 1) == x_var() * jet(1, 2));
  CHECK(is_zero(ExprMatrix(c - c)));
}

TEST_CASE("randomized ring identities") {
  std::mt19937 rng(7);
  std::vector<Expr> pool = {jet(1, 1), jet(1, 2, 0, 1), t_var(), x_var(), Expr(Rational(3, 5)), exp(x_var()), param("a")};
  auto pick = [&] {
    Expr e;
    for (int i = 0; i < 3; ++i) e += pool[rng() % pool.size()] * pool[rng() % pool.size()];
    return e;
  };
  for (int trial = 0; trial < 50; ++trial) {
    Expr p = pick(), q = pick(), r = pick();
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p * q) * r == p * (q * r));
    CHECK(total_derivative(p * q, Var::x) == total_derivative(p, Var::x) * q + p * total_derivative(q, Var::x));
  }
}
