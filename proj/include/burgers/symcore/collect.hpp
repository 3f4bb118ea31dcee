#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

class NonPolynomialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CoefficientMap = std::map<Monomial, Expr, MonomialLess>;

/// Writes e as a polynomial in the selected atoms and returns the
/// coefficient of each monomial. Throws NonPolynomialError when a selected
/// atom appears with a negative power or inside a function argument.
CoefficientMap collect(const Expr& e, const std::function<bool(const Atom&)>& select);
CoefficientMap collect(const Expr& e, const std::vector<Atom>& vars);

/// Selector for every jet coordinate of the given tier (derivatives included).
std::function<bool(const Atom&)> jets_of_tier(int tier);

}  // namespace burgers::symcore
