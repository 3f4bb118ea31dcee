#include "burgers/symcore/substitute.hpp"

#include <functional>
#include <set>

#include "burgers/symcore/calculus.hpp"

namespace burgers::symcore {

namespace {

// Rule keys share one namespace for cycle detection.
std::string key_of(const Atom& a) {
  switch (a.kind()) {
    case Atom::Kind::Jet:
    case Atom::Kind::Param:
      return to_string(a);
    case Atom::Kind::Func:
      return "fn:" + to_string(Expr(Atom::function(a.symbol())));
    default:
      return {};
  }
}

void collect_keys(const Expr& e, std::set<std::string>& out) {
  for (const auto& t : e.terms()) {
    for (const auto& f : t.mono.factors) {
      if (f.atom.kind() == Atom::Kind::Apply) {
        collect_keys(f.atom.arg(), out);
        continue;
      }
      auto k = key_of(f.atom);
      if (!k.empty()) out.insert(k);
    }
  }
}

}  // namespace

SubstitutionMap& SubstitutionMap::set(const JetCoord& lhs, Expr rhs) {
  if (contains(rhs, Atom::jet(lhs))) throw SubstitutionError("rule for " + to_string(Atom::jet(lhs)) + " refers to itself");
  jets_[lhs] = std::move(rhs);
  check_acyclic();
  return *this;
}

SubstitutionMap& SubstitutionMap::set_param(const std::string& name, Expr rhs) {
  if (contains(rhs, Atom::param(name))) throw SubstitutionError("rule for " + name + " refers to itself");
  params_[name] = std::move(rhs);
  check_acyclic();
  return *this;
}

SubstitutionMap& SubstitutionMap::set_function(const FunctionSymbolPtr& symbol, Expr rhs) {
  if (uses_symbol(rhs, *symbol)) throw SubstitutionError("rule for " + symbol->name + " refers to itself");
  functions_[symbol] = std::move(rhs);
  check_acyclic();
  return *this;
}

void SubstitutionMap::check_acyclic() const {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [j, rhs] : jets_) collect_keys(rhs, edges[key_of(Atom::jet(j))]);
  for (const auto& [p, rhs] : params_) collect_keys(rhs, edges[key_of(Atom::param(p))]);
  for (const auto& [s, rhs] : functions_) collect_keys(rhs, edges[key_of(Atom::function(s))]);

  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::function<void(const std::string&)> visit = [&](const std::string& k) {
    auto& m = mark[k];
    if (m == Mark::Done) return;
    if (m == Mark::Active) throw SubstitutionError("cyclic substitution through " + k);
    m = Mark::Active;
    if (auto it = edges.find(k); it != edges.end())
      for (const auto& next : it->second) visit(next);
    mark[k] = Mark::Done;
  };
  for (const auto& [k, _] : edges) visit(k);
}

Expr SubstitutionMap::replace_atom(const Atom& a, bool& changed) const {
  switch (a.kind()) {
    case Atom::Kind::Jet:
      if (auto it = jets_.find(a.jet()); it != jets_.end()) {
        changed = true;
        return it->second;
      }
      break;
    case Atom::Kind::Param:
      if (auto it = params_.find(a.name()); it != params_.end()) {
        changed = true;
        return it->second;
      }
      break;
    case Atom::Kind::Func:
      if (auto it = functions_.find(a.symbol()); it != functions_.end()) {
        changed = true;
        Expr r = it->second;
        const auto& args = a.symbol()->args;
        for (std::size_t i = 0; i < args.size(); ++i)
          for (int k = 0; k < a.derivs()[i]; ++k) r = partial(r, args[i]);
        return r;
      }
      break;
    case Atom::Kind::Apply: {
      bool inner = false;
      Expr arg = apply_once(a.arg(), inner);
      if (inner) {
        changed = true;
        return a.fn() == ElemFn::Pow ? rpow(arg, a.exponent()) : symcore::apply(a.fn(), arg);
      }
      break;
    }
    case Atom::Kind::Indep:
      break;
  }
  return Expr(a);
}

Expr SubstitutionMap::apply_once(const Expr& e, bool& changed) const {
  std::vector<Expr> parts;
  parts.reserve(e.size());
  for (const auto& term : e.terms()) {
    Monomial kept;
    Expr product(term.coef);
    bool touched = false;
    for (const auto& f : term.mono.factors) {
      bool c = false;
      Expr r = replace_atom(f.atom, c);
      if (c) {
        touched = true;
        product *= pow(r, f.power);
      } else {
        kept.factors.push_back(f);
      }
    }
    if (!touched) {
      parts.push_back(term_expr(term.mono, term.coef));
    } else {
      changed = true;
      parts.push_back(product * term_expr(kept));
    }
  }
  return sum(parts);
}

bool SubstitutionMap::mentions_lhs(const Expr& e) const {
  bool changed = false;
  (void)apply_once(e, changed);
  return changed;
}

Expr SubstitutionMap::apply(const Expr& e) const {
  if (empty()) return e;
  Expr cur = e;
  for (int depth = 0; depth < max_depth_; ++depth) {
    bool changed = false;
    Expr next = apply_once(cur, changed);
    if (!changed) return cur;
    cur = std::move(next);
  }
  if (mentions_lhs(cur)) throw SubstitutionError("substitution did not settle within depth " + std::to_string(max_depth_));
  return cur;
}

Expr substitute(const Expr& e, const SubstitutionMap& rules) { return rules.apply(e); }

}  // namespace burgers::symcore
