#include "burgers/hierarchy.hpp"

#include <stdexcept>
#include <string>

#include "burgers/symcore/parse.hpp"

namespace burgers::hierarchy {

using symcore::jet;

namespace {

void require_m(int m) {
  if (m < 1) throw std::invalid_argument("m must be a positive integer, got " + std::to_string(m));
}

}  // namespace

int tier_of(int m) {
  require_m(m);
  return (m + 1) / 2;
}

PdeSystem build_delta(int m) { return build_delta(m, tier_of(m)); }

PdeSystem build_delta(int m, int tier) {
  require_m(m);
  PdeSystem s;
  s.m = m;
  s.tier = tier;
  Expr u1x = jet(tier, 1, 0, 1);
  for (int a = 1; a <= m; ++a) {
    Expr rhs = jet(tier, a, 0, 2) - jet(tier, a) * u1x;
    if (a < m) rhs -= jet(tier, a + 1, 0, 1);
    s.solved_for.push_back({tier, a, 1, 0});
    s.residuals.push_back(jet(tier, a, 1, 0) - rhs);
    s.solved_rhs.push_back(std::move(rhs));
  }
  return s;
}

ExprMatrix build_companion(int m) { return build_companion(m, tier_of(m)); }

ExprMatrix build_companion(int m, int tier) {
  require_m(m);
  ExprMatrix omega = ExprMatrix::Constant(m, m, Expr());
  for (int i = 0; i + 1 < m; ++i) omega(i, i + 1) = Expr(1);
  for (int j = 0; j < m; ++j) omega(m - 1, j) = jet(tier, m - j);
  return omega;
}

MatrixBurgers matrix_burgers_residual(int m) {
  ExprMatrix omega = build_companion(m);
  ExprMatrix omega_x = symcore::total_derivative(omega, symcore::Var::x);
  ExprMatrix omega_t = symcore::total_derivative(omega, symcore::Var::t);
  ExprMatrix omega_xx = symcore::total_derivative(omega_x, symcore::Var::x);
  MatrixBurgers out;
  out.residual = omega_t + symcore::multiply(omega_x, omega) - omega_xx;
  for (int j = 0; j < m; ++j) out.permutation.push_back(m - j);
  return out;
}

VectorField build_symmetry_field(int m) {
  const int k = tier_of(m);
  // Unknowns beyond the m-th vanish; this also covers the m = 1 case, where
  // the u_2 u_m term of the last component is absent.
  auto u = [&](int a) { return a <= m ? jet(k, a) : Expr(); };
  auto U = [&](int a) { return jet(k + 1, a); };
  const Rational quarter(1, 4);

  VectorField f;
  f.m = m;
  f.tier = k;
  f.tau = Expr(1);
  f.xi = Expr(Rational(1, 2)) * (U(1) - u(1));
  for (int a = 1; a <= m; ++a) {
    Expr e = -u(1) * u(1) * u(a) - u(1) * u(a + 1) - u(2) * u(a) + U(1) * u(1) * u(a) + U(2) * u(a) +
             U(1) * u(a + 1) - u(a + 2) + U(a + 2);
    f.etas.push_back(Expr(quarter) * e);
  }
  return f;
}

namespace {

symcore::Atom retier_atom(const symcore::Atom& a, int from, int to) {
  using Kind = symcore::Atom::Kind;
  switch (a.kind()) {
    case Kind::Jet: {
      if (a.jet().tier != from) return a;
      JetCoord j = a.jet();
      j.tier = to;
      return symcore::Atom::jet(j);
    }
    case Kind::Func: {
      std::vector<symcore::Atom> args;
      for (const auto& arg : a.symbol()->args) args.push_back(retier_atom(arg, from, to));
      return symcore::Atom::function(symcore::FunctionSymbol::make(a.symbol()->name, std::move(args)), a.derivs());
    }
    case Kind::Apply:
      return symcore::Atom::apply(a.fn(), retier(a.arg(), from, to), a.exponent());
    default:
      return a;
  }
}

}  // namespace

Expr retier(const Expr& e, int from, int to) {
  if (from == to) return e;
  std::vector<symcore::Term> terms;
  terms.reserve(e.size());
  for (auto term : e.terms()) {
    for (auto& f : term.mono.factors) f.atom = retier_atom(f.atom, from, to);
    // Renaming can reorder atoms inside a monomial.
    symcore::Monomial m;
    Expr product = symcore::term_expr(m, term.coef);
    for (const auto& f : term.mono.factors) product *= symcore::pow(Expr(f.atom), f.power);
    terms.insert(terms.end(), product.terms().begin(), product.terms().end());
  }
  return Expr::from_terms(std::move(terms));
}

namespace {

nlohmann::json jet_json(const JetCoord& j) { return {{"tier", j.tier}, {"alpha", j.alpha}, {"nt", j.nt}, {"nx", j.nx}}; }

Expr expr_from(const nlohmann::json& j) { return symcore::parse(j.get<std::string>(), symcore::ParseContext{{}, true}); }

}  // namespace

nlohmann::json to_json(const PdeSystem& s) {
  nlohmann::json eqs = nlohmann::json::array();
  for (std::size_t i = 0; i < s.residuals.size(); ++i)
    eqs.push_back({{"residual", symcore::to_string(s.residuals[i])},
                   {"solved_for", jet_json(s.solved_for[i])},
                   {"rhs", symcore::to_string(s.solved_rhs[i])}});
  return {{"m", s.m}, {"tier", s.tier}, {"equations", eqs}};
}

nlohmann::json to_json(const VectorField& f) {
  nlohmann::json etas = nlohmann::json::array();
  for (const auto& e : f.etas) etas.push_back(symcore::to_string(e));
  return {{"m", f.m}, {"tier", f.tier}, {"tau", symcore::to_string(f.tau)}, {"xi", symcore::to_string(f.xi)}, {"etas", etas}};
}

VectorField vector_field_from_json(const nlohmann::json& j) {
  VectorField f;
  f.m = j.at("m").get<int>();
  f.tier = j.at("tier").get<int>();
  f.tau = expr_from(j.at("tau"));
  f.xi = expr_from(j.at("xi"));
  for (const auto& e : j.at("etas")) f.etas.push_back(expr_from(e));
  if (static_cast<int>(f.etas.size()) != f.m) throw std::invalid_argument("vector field needs one eta per component");
  return f;
}

PdeSystem pde_system_from_json(const nlohmann::json& j) {
  PdeSystem s;
  s.m = j.at("m").get<int>();
  s.tier = j.at("tier").get<int>();
  for (const auto& eq : j.at("equations")) {
    s.residuals.push_back(expr_from(eq.at("residual")));
    s.solved_rhs.push_back(expr_from(eq.at("rhs")));
    const auto& sf = eq.at("solved_for");
    s.solved_for.push_back({sf.at("tier").get<int>(), sf.at("alpha").get<int>(), sf.at("nt").get<int>(), sf.at("nx").get<int>()});
  }
  return s;
}

}  // namespace burgers::hierarchy
