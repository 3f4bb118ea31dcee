#include "burgers/symcore/collect.hpp"

#include <algorithm>

namespace burgers::symcore {

namespace {

bool hides_selected(const Atom& a, const std::function<bool(const Atom&)>& select) {
  if (a.kind() == Atom::Kind::Func)
    return std::any_of(a.symbol()->args.begin(), a.symbol()->args.end(), select);
  if (a.kind() == Atom::Kind::Apply) {
    for (const auto& t : a.arg().terms())
      for (const auto& f : t.mono.factors)
        if (select(f.atom) || hides_selected(f.atom, select)) return true;
  }
  return false;
}

}  // namespace

CoefficientMap collect(const Expr& e, const std::function<bool(const Atom&)>& select) {
  std::map<Monomial, std::vector<Term>, MonomialLess> buckets;
  for (const auto& term : e.terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& f : term.mono.factors) {
      if (select(f.atom)) {
        if (f.power < 0) throw NonPolynomialError("negative power of " + to_string(f.atom));
        key.factors.push_back(f);
      } else {
        if (hides_selected(f.atom, select))
          throw NonPolynomialError("collected variable inside " + to_string(f.atom));
        rest.factors.push_back(f);
      }
    }
    buckets[key].push_back(Term{std::move(rest), term.coef});
  }
  CoefficientMap out;
  for (auto& [key, terms] : buckets) {
    Expr c = Expr::from_terms(std::move(terms));
    if (!c.is_zero()) out.emplace(key, std::move(c));
  }
  return out;
}

CoefficientMap collect(const Expr& e, const std::vector<Atom>& vars) {
  return collect(e, [&](const Atom& a) { return std::find(vars.begin(), vars.end(), a) != vars.end(); });
}

std::function<bool(const Atom&)> jets_of_tier(int tier) {
  return [tier](const Atom& a) { return a.kind() == Atom::Kind::Jet && a.jet().tier == tier; };
}

}  // namespace burgers::symcore
