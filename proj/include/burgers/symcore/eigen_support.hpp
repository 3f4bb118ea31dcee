#pragma once

// Lets Expr act as an Eigen scalar so symbolic matrices reuse Eigen's
// containers and products.

#include <Eigen/Core>

#include "burgers/symcore/calculus.hpp"
#include "burgers/symcore/expr.hpp"

namespace Eigen {

template <>
struct NumTraits<burgers::symcore::Expr> : GenericNumTraits<burgers::symcore::Expr> {
  using Real = burgers::symcore::Expr;
  using NonInteger = burgers::symcore::Expr;
  using Nested = burgers::symcore::Expr;
  using Literal = burgers::symcore::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace burgers::symcore {

using ExprMatrix = Eigen::Matrix<Expr, Eigen::Dynamic, Eigen::Dynamic>;
using ExprVector = Eigen::Matrix<Expr, Eigen::Dynamic, 1>;

/// Exact product. Eigen's default product path assumes floating point, so
/// symbolic code goes through the coefficient-wise lazy product.
inline ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b) { return a.lazyProduct(b); }

inline ExprMatrix total_derivative(const ExprMatrix& m, Var v) {
  return m.unaryExpr([v](const Expr& e) { return total_derivative(e, v); });
}

inline bool is_zero(const ExprMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

}  // namespace burgers::symcore
