#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replacement rules for jet coordinates, parameters and opaque functions.
///
/// A rule for a function symbol also rewrites every derivative of it, by
/// differentiating the replacement through the symbol's signature. Rules are
/// applied repeatedly until no left-hand side remains; cyclic rule sets are
/// rejected when added. Function signatures are never rewritten: a jet rule
/// does not reach the arguments of f(t, x, u[1,1]).
class SubstitutionMap {
 public:
  explicit SubstitutionMap(int max_depth = 64) : max_depth_(max_depth) {}

  SubstitutionMap& set(const JetCoord& lhs, Expr rhs);
  SubstitutionMap& set_param(const std::string& name, Expr rhs);
  SubstitutionMap& set_function(const FunctionSymbolPtr& symbol, Expr rhs);

  bool empty() const { return jets_.empty() && params_.empty() && functions_.empty(); }
  std::size_t size() const { return jets_.size() + params_.size() + functions_.size(); }

  /// Applies all rules to a fixpoint. Throws SubstitutionError when the
  /// depth bound is exceeded.
  Expr apply(const Expr& e) const;

 private:
  struct SymbolLess {
    bool operator()(const FunctionSymbolPtr& a, const FunctionSymbolPtr& b) const {
      return compare_symbols(*a, *b) < 0;
    }
  };

  Expr apply_once(const Expr& e, bool& changed) const;
  Expr replace_atom(const Atom& a, bool& changed) const;
  bool mentions_lhs(const Expr& e) const;
  void check_acyclic() const;

  int max_depth_;
  std::map<JetCoord, Expr> jets_;
  std::map<std::string, Expr> params_;
  std::map<FunctionSymbolPtr, Expr, SymbolLess> functions_;
};

/// One-shot helper.
Expr substitute(const Expr& e, const SubstitutionMap& rules);

}  // namespace burgers::symcore
