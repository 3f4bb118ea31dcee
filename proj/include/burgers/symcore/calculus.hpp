#pragma once

#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

/// Partial derivative with respect to a coordinate atom (t, x, a jet
/// coordinate or a parameter). All other coordinates are held fixed;
/// opaque functions differentiate through their signature.
Expr partial(const Expr& e, const Atom& wrt);

/// Total derivative D_t or D_x on jet space: jets move up one order,
/// opaque functions follow the chain rule through their arguments.
Expr total_derivative(const Expr& e, Var v);

/// Repeated total derivative, e.g. D_x^2 D_t.
Expr total_derivative(const Expr& e, int nt, int nx);

}  // namespace burgers::symcore
