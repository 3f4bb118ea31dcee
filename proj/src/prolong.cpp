#include "burgers/prolong.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "burgers/symcore/calculus.hpp"

namespace burgers::prolong {

using symcore::Atom;
using symcore::jet;
using symcore::Var;
using symcore::total_derivative;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void require_unit_tau(const VectorField& f) {
  if (f.tau != Expr(1)) throw std::invalid_argument("conditional manifold needs tau = 1");
}

}  // namespace

ProlongedField prolong2(const VectorField& field) {
  ProlongedField pr;
  pr.base = field;
  const int k = field.tier;
  for (int a = 1; a <= field.m; ++a) {
    Expr w = field.etas[a - 1] - field.tau * jet(k, a, 1, 0) - field.xi * jet(k, a, 0, 1);
    Expr wt = total_derivative(w, Var::t);
    Expr wx = total_derivative(w, Var::x);
    std::map<std::pair<int, int>, Expr> dw = {{{1, 0}, wt},
                                              {{0, 1}, wx},
                                              {{2, 0}, total_derivative(wt, Var::t)},
                                              {{1, 1}, total_derivative(wt, Var::x)},
                                              {{0, 2}, total_derivative(wx, Var::x)}};
    std::map<std::pair<int, int>, Expr> coeffs;
    for (const auto& [nt, nx] : kSecondOrder)
      coeffs[{nt, nx}] = dw.at({nt, nx}) + field.tau * jet(k, a, nt + 1, nx) + field.xi * jet(k, a, nt, nx + 1);
    pr.coefficients.push_back(std::move(coeffs));
  }
  return pr;
}

ProlongedField prolong2_direct(const VectorField& field) {
  ProlongedField pr;
  pr.base = field;
  const int k = field.tier;
  const Expr tau_t = total_derivative(field.tau, Var::t), tau_x = total_derivative(field.tau, Var::x);
  const Expr xi_t = total_derivative(field.xi, Var::t), xi_x = total_derivative(field.xi, Var::x);
  for (int a = 1; a <= field.m; ++a) {
    // eta^{Jv} = D_v eta^J - u_{Jt} D_v tau - u_{Jx} D_v xi
    auto step = [&](const Expr& prev, int nt, int nx, Var v) {
      const Expr& dtau = v == Var::t ? tau_t : tau_x;
      const Expr& dxi = v == Var::t ? xi_t : xi_x;
      return total_derivative(prev, v) - jet(k, a, nt + 1, nx) * dtau - jet(k, a, nt, nx + 1) * dxi;
    };
    std::map<std::pair<int, int>, Expr> c;
    c[{1, 0}] = step(field.etas[a - 1], 0, 0, Var::t);
    c[{0, 1}] = step(field.etas[a - 1], 0, 0, Var::x);
    c[{2, 0}] = step(c[{1, 0}], 1, 0, Var::t);
    c[{1, 1}] = step(c[{1, 0}], 1, 0, Var::x);
    c[{0, 2}] = step(c[{0, 1}], 0, 1, Var::x);
    pr.coefficients.push_back(std::move(c));
  }
  return pr;
}

Expr apply_prolonged(const ProlongedField& pr, const Expr& F) {
  const auto& f = pr.base;
  const int k = f.tier;
  for (const auto& a : symcore::atoms(F))
    if (a.kind() == Atom::Kind::Jet && a.jet().tier == k && a.jet().order() > 2)
      throw std::invalid_argument("second prolongation applied to a third-order expression");
  std::vector<Expr> parts;
  parts.push_back(f.tau * symcore::partial(F, Atom::indep(Var::t)));
  parts.push_back(f.xi * symcore::partial(F, Atom::indep(Var::x)));
  for (int a = 1; a <= f.m; ++a) {
    parts.push_back(f.etas[a - 1] * symcore::partial(F, Atom::jet({k, a, 0, 0})));
    for (const auto& [nt, nx] : kSecondOrder) {
      Expr dF = symcore::partial(F, Atom::jet({k, a, nt, nx}));
      if (!dF.is_zero()) parts.push_back(pr.eta(a, nt, nx) * dF);
    }
  }
  return symcore::sum(parts);
}

symcore::SubstitutionMap manifold_rules(const VectorField& field) {
  require_unit_tau(field);
  const int k = field.tier, m = field.m;
  symcore::SubstitutionMap first;
  std::vector<Expr> t_rhs, xx_rhs;
  for (int a = 1; a <= m; ++a) {
    Expr ut = field.etas[a - 1] - field.xi * jet(k, a, 0, 1);
    Expr uxx = ut + jet(k, a) * jet(k, 1, 0, 1);
    if (a < m) uxx += jet(k, a + 1, 0, 1);
    first.set({k, a, 1, 0}, ut);
    first.set({k, a, 0, 2}, uxx);
    t_rhs.push_back(std::move(ut));
    xx_rhs.push_back(std::move(uxx));
  }
  symcore::SubstitutionMap second = first;
  for (int a = 1; a <= m; ++a) second.set({k, a, 1, 1}, first.apply(total_derivative(t_rhs[a - 1], Var::x)));
  symcore::SubstitutionMap rules = second;
  for (int a = 1; a <= m; ++a) {
    rules.set({k, a, 2, 0}, second.apply(total_derivative(t_rhs[a - 1], Var::t)));
    rules.set({k, a, 0, 3}, first.apply(total_derivative(xx_rhs[a - 1], Var::x)));
  }
  return rules;
}

symcore::SubstitutionMap classical_rules(const hierarchy::PdeSystem& system) {
  const int k = system.tier;
  symcore::SubstitutionMap base;
  for (int a = 1; a <= system.m; ++a) {
    const Expr& rhs = system.solved_rhs[a - 1];
    Expr rx = total_derivative(rhs, Var::x);
    base.set({k, a, 1, 0}, rhs);
    base.set({k, a, 1, 1}, rx);
    base.set({k, a, 1, 2}, total_derivative(rx, Var::x));
  }
  symcore::SubstitutionMap rules = base;
  for (int a = 1; a <= system.m; ++a)
    rules.set({k, a, 2, 0}, base.apply(total_derivative(system.solved_rhs[a - 1], Var::t)));
  return rules;
}

VectorField generic_ansatz(int m) {
  VectorField f;
  f.m = m;
  f.tier = hierarchy::tier_of(m);
  std::vector<Atom> args = {Atom::indep(Var::t), Atom::indep(Var::x)};
  for (int a = 1; a <= m; ++a) args.push_back(Atom::jet({f.tier, a, 0, 0}));
  f.tau = Expr(1);
  f.xi = symcore::function(symcore::FunctionSymbol::make("xi", args));
  for (int a = 1; a <= m; ++a)
    f.etas.push_back(symcore::function(symcore::FunctionSymbol::make("eta" + std::to_string(a), args)));
  return f;
}

std::vector<Expr> determining_polynomials(int m, const VectorField& ansatz) {
  if (ansatz.m != m) throw std::invalid_argument("ansatz has the wrong number of components");
  auto rules = manifold_rules(ansatz);
  auto pr = prolong2(ansatz);
  auto delta = hierarchy::build_delta(m, ansatz.tier);
  std::vector<Expr> out;
  for (const auto& r : delta.residuals) out.push_back(rules.apply(apply_prolonged(pr, r)));
  return out;
}

// ---------------------------------------------------------------------------
// kappa

namespace {

bool has_derivative_of(const Expr& e, const symcore::FunctionSymbol& s) {
  for (const auto& a : symcore::atoms(e)) {
    if (a.kind() != Atom::Kind::Func || symcore::compare_symbols(*a.symbol(), s) != 0) continue;
    const auto& d = a.derivs();
    if (std::any_of(d.begin(), d.end(), [](int v) { return v != 0; })) return true;
  }
  return false;
}

// Solves e = 0 for the underived symbol when it enters linearly with a
// nonzero rational coefficient and nowhere else.
std::optional<Expr> solve_linear(const Expr& e, const symcore::FunctionSymbolPtr& s) {
  if (!symcore::uses_symbol(e, *s) || has_derivative_of(e, *s)) return std::nullopt;
  Atom fn = Atom::function(s);
  auto parts = symcore::collect(e, [&](const Atom& a) { return a == fn; });
  Expr coef, rest;
  for (const auto& [mono, c] : parts) {
    if (mono.is_one())
      rest = c;
    else if (mono.factors.size() == 1 && mono.factors[0].power == 1)
      coef = c;
    else
      return std::nullopt;
  }
  auto cv = coef.constant_value();
  if (!cv || cv->is_zero()) return std::nullopt;
  return -rest / coef;
}

}  // namespace

KappaResult verify_kappa_constraint(int m) {
  const int k = hierarchy::tier_of(m);
  const Atom kappa = Atom::param("kappa");
  const std::vector<Atom> tx = {Atom::indep(Var::t), Atom::indep(Var::x)};

  VectorField f;
  f.m = m;
  f.tier = k;
  f.tau = Expr(1);
  f.xi = Expr(kappa) * jet(k, 1) + Expr(Rational(1, 2)) * symcore::function(symcore::FunctionSymbol::make("f", tx));

  // Monomials of degree <= 3 in u_1..u_m, as sorted index lists.
  std::vector<std::vector<int>> monomials = {{}};
  for (std::size_t start = 0, d = 0; d < 3; ++d) {
    std::size_t end = monomials.size();
    for (std::size_t i = start; i < end; ++i) {
      int from = monomials[i].empty() ? 1 : monomials[i].back();
      for (int b = from; b <= m; ++b) {
        auto next = monomials[i];
        next.push_back(b);
        monomials.push_back(std::move(next));
      }
    }
    start = end;
  }
  std::vector<symcore::FunctionSymbolPtr> unknowns;
  for (int a = 1; a <= m; ++a) {
    Expr eta;
    for (const auto& mono : monomials) {
      std::string name = "a" + std::to_string(a) + "_";
      Expr term(1);
      for (int b : mono) {
        name += std::to_string(b);
        term *= jet(k, b);
      }
      auto s = symcore::FunctionSymbol::make(name, tx);
      unknowns.push_back(s);
      eta += symcore::function(s) * term;
    }
    f.etas.push_back(std::move(eta));
  }

  std::vector<Expr> eqs;
  for (const auto& r : determining_polynomials(m, f))
    for (auto& [mono, c] : symcore::collect(r, symcore::jets_of_tier(k))) eqs.push_back(c);

  KappaResult res;
  res.m = m;
  res.equations = eqs.size();
  for (;;) {
    std::vector<std::size_t> order(eqs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return eqs[i].size() < eqs[j].size(); });
    bool progressed = false;
    for (auto i : order) {
      for (auto it = unknowns.begin(); it != unknowns.end(); ++it) {
        auto sol = solve_linear(eqs[i], *it);
        if (!sol) continue;
        symcore::SubstitutionMap rule;
        rule.set_function(*it, *sol);
        std::vector<Expr> next;
        for (const auto& e : eqs) {
          Expr r = symcore::uses_symbol(e, **it) ? rule.apply(e) : e;
          if (!r.is_zero()) next.push_back(std::move(r));
        }
        eqs = std::move(next);
        unknowns.erase(it);
        ++res.eliminated;
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed) break;
  }

  std::optional<symcore::UPoly> g;
  for (const auto& e : eqs) {
    auto as = symcore::atoms(e);
    if (!std::all_of(as.begin(), as.end(), [&](const Atom& a) { return a == kappa; })) continue;
    auto p = symcore::UPoly::from_expr(e, kappa);
    g = g ? symcore::gcd(*g, p) : p.primitive();
  }
  if (!g) throw std::runtime_error("no pure kappa condition survived the elimination for m = " + std::to_string(m));
  res.constraint = *g;
  res.roots = g->rational_roots();
  symcore::UPoly expected = m == 1 ? symcore::UPoly({0, -1, -1, 2}) : symcore::UPoly({0, 1, 2});
  res.expected = m == 1 ? "kappa*(kappa - 1)*(2*kappa + 1)" : "kappa*(2*kappa + 1)";
  res.divisible = symcore::UPoly::divmod(*g, expected).second.is_zero();
  return res;
}

nlohmann::json KappaResult::to_json() const {
  nlohmann::json roots_json = nlohmann::json::array();
  for (const auto& r : roots) roots_json.push_back(r.str());
  return {{"m", m},
          {"status", divisible ? "pass" : "fail"},
          {"constraint", constraint.str("kappa")},
          {"roots", roots_json},
          {"expected_factor", expected},
          {"determining_equations", equations},
          {"eliminated", eliminated}};
}

// ---------------------------------------------------------------------------
// Theorem

nlohmann::json TheoremReport::to_json(bool with_timing) const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : coefficient_map) {
    nlohmann::json comb = nlohmann::json::object();
    for (const auto& [j, lambda] : c.combination) comb[std::to_string(j)] = symcore::to_string(lambda);
    coeffs.push_back({{"equation", c.equation}, {"monomial", c.monomial}, {"combination", comb}});
  }
  nlohmann::json j = {{"m", m}, {"status", passed ? "pass" : "fail"}, {"coefficient_map", coeffs}, {"term_counts", term_counts}};
  if (!failure.empty()) j["failure"] = failure;
  if (with_timing) j["wall_time_ms"] = wall_time_ms;
  return j;
}

TheoremReport verify_theorem(int m) {
  auto start = std::chrono::steady_clock::now();
  TheoremReport rep;
  rep.m = m;
  const int k = hierarchy::tier_of(m);
  auto field = hierarchy::build_symmetry_field(m);
  auto pr = prolong2(field);
  auto delta = hierarchy::build_delta(m, k);
  auto rules = manifold_rules(field);
  auto next = hierarchy::build_delta(m + 2, k + 1);
  symcore::SubstitutionMap next_rules;
  for (int j = 1; j <= m + 2; ++j) next_rules.set(next.solved_for[j - 1], next.solved_rhs[j - 1]);

  std::size_t raw_terms = 0, restricted_terms = 0;
  auto fail = [&](std::string why) {
    if (rep.failure.empty()) rep.failure = std::move(why);
  };
  for (int a = 1; a <= m; ++a) {
    Expr raw = apply_prolonged(pr, delta.residuals[a - 1]);
    Expr restricted = rules.apply(raw);
    raw_terms += raw.size();
    restricted_terms += restricted.size();
    for (const auto& [mono, c] : symcore::collect(restricted, symcore::jets_of_tier(k))) {
      for (const auto& f : mono.factors)
        if (f.atom.jet().nt > 0 || f.atom.jet().nx > 1)
          fail("equation " + std::to_string(a) + " keeps " + symcore::to_string(f.atom) + " after restriction");
      CoefficientEntry entry;
      entry.equation = a;
      entry.monomial = symcore::to_string(mono);
      std::vector<Expr> span;
      for (int j = 1; j <= m + 2; ++j) {
        Expr lambda = symcore::partial(c, Atom::jet({k + 1, j, 1, 0}));
        if (lambda.is_zero()) continue;
        span.push_back(lambda * next.residuals[j - 1]);
        entry.combination.emplace(j, std::move(lambda));
      }
      if (c != symcore::sum(span))
        fail("coefficient of " + entry.monomial + " in equation " + std::to_string(a) +
             " is not a combination of the next system's residuals");
      rep.coefficient_map.push_back(std::move(entry));
    }
    Expr final = next_rules.apply(restricted);
    if (!final.is_zero()) fail("equation " + std::to_string(a) + " leaves residual " + symcore::to_string(final));
  }
  rep.term_counts = {{"raw", raw_terms}, {"restricted", restricted_terms}, {"coefficients", rep.coefficient_map.size()}};
  rep.passed = rep.failure.empty();
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

// ---------------------------------------------------------------------------
// Classical

nlohmann::json ClassicalReport::to_json(bool with_timing) const {
  nlohmann::json j = {{"m", m}, {"status", passed ? "pass" : "fail"}, {"failures", failures}};
  if (with_timing) j["wall_time_ms"] = wall_time_ms;
  return j;
}

ClassicalReport verify_classical(int m, const std::vector<VectorField>& generators) {
  auto start = std::chrono::steady_clock::now();
  ClassicalReport rep;
  rep.m = m;
  auto delta = hierarchy::build_delta(m);
  auto rules = classical_rules(delta);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.m != m || g.tier != delta.tier) throw std::invalid_argument("generator does not act on this system");
    auto pr = prolong2(g);
    for (int a = 1; a <= m; ++a) {
      Expr r = rules.apply(apply_prolonged(pr, delta.residuals[a - 1]));
      if (!r.is_zero())
        rep.failures.push_back("generator " + std::to_string(i + 1) + ", equation " + std::to_string(a) + ": " +
                               symcore::to_string(r));
    }
  }
  rep.passed = rep.failures.empty();
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

}  // namespace burgers::prolong
