#pragma once

// The coupled Burgers-like systems, their companion-matrix form and the
// conditional symmetry field that links one tier to the next.

#include <vector>

#include "burgers/symcore/eigen_support.hpp"
#include "burgers/symcore/expr.hpp"
#include "json.hpp"

namespace burgers::hierarchy {

using symcore::Expr;
using symcore::ExprMatrix;
using symcore::JetCoord;

/// ceil(m/2): the tier label used for the unknowns of the m-component system.
int tier_of(int m);

/// Residuals u_a,t + u_a u_1,x - u_a,xx + u_{a+1},x (a < m; the last
/// equation has no coupling term), each solved for u_a,t.
struct PdeSystem {
  int m = 0;
  int tier = 0;
  std::vector<Expr> residuals;
  std::vector<JetCoord> solved_for;
  /// Right-hand sides of u_a,t = ..., in equation order.
  std::vector<Expr> solved_rhs;
};

PdeSystem build_delta(int m);
PdeSystem build_delta(int m, int tier);

/// Companion matrix: ones on the superdiagonal, last row (u_m, ..., u_1).
ExprMatrix build_companion(int m);
ExprMatrix build_companion(int m, int tier);

struct MatrixBurgers {
  /// Omega_t + Omega_x Omega - Omega_xx, entrywise.
  ExprMatrix residual;
  /// permutation[j] = a means last-row column j carries equation a (1-based).
  std::vector<int> permutation;
};

MatrixBurgers matrix_burgers_residual(int m);

/// Point vector field tau d/dt + xi d/dx + sum eta_a d/du[tier,a].
struct VectorField {
  int m = 0;
  int tier = 0;
  Expr tau;
  Expr xi;
  std::vector<Expr> etas;

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// The conditional symmetry field of the m-component system, written with
/// the next tier's unknowns u[k+1,1..m+2] as free functions of (t, x).
VectorField build_symmetry_field(int m);

/// Renames every jet coordinate of tier `from` to tier `to`.
Expr retier(const Expr& e, int from, int to);

nlohmann::json to_json(const PdeSystem& s);
nlohmann::json to_json(const VectorField& f);
VectorField vector_field_from_json(const nlohmann::json& j);
PdeSystem pde_system_from_json(const nlohmann::json& j);

}  // namespace burgers::hierarchy
