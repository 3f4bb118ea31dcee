#pragma once

// Second prolongation of point vector fields, restriction to the manifold
// cut out by the system and the invariant surface conditions, and the
// verification drivers built on top of them.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "burgers/hierarchy.hpp"
#include "burgers/symcore/collect.hpp"
#include "burgers/symcore/substitute.hpp"
#include "burgers/symcore/upoly.hpp"
#include "json.hpp"

namespace burgers::prolong {

using hierarchy::VectorField;
using symcore::Expr;
using symcore::JetCoord;

/// Derivative multi-indices carried by a second prolongation.
inline constexpr std::array<std::pair<int, int>, 5> kSecondOrder = {{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};

struct ProlongedField {
  VectorField base;
  /// coefficients[a-1] maps (nt, nx) to eta_a^J.
  std::vector<std::map<std::pair<int, int>, Expr>> coefficients;

  const Expr& eta(int alpha, int nt, int nx) const { return coefficients.at(alpha - 1).at({nt, nx}); }
};

/// Characteristic form: eta^J = D_J(W) + tau u_{J t} + xi u_{J x} with
/// W = eta - tau u_t - xi u_x. Any tau is accepted.
ProlongedField prolong2(const VectorField& field);

/// Textbook recursion eta^{Jv} = D_v eta^J - u_{J t} D_v tau - u_{J x} D_v xi.
/// Kept as an independent cross-check of prolong2.
ProlongedField prolong2_direct(const VectorField& field);

/// Xi^(2)(F) for F of order at most two in the field's tier.
Expr apply_prolonged(const ProlongedField& pr, const Expr& F);

/// Rules that eliminate u_t, u_tx, u_tt, u_xx and u_xxx of the field's tier
/// on the conditional manifold. Requires tau = 1. Each right-hand side is
/// already reduced, so a single pass suffices.
symcore::SubstitutionMap manifold_rules(const VectorField& field);

/// Rules for the system alone, solved for u_t (classical symmetries).
symcore::SubstitutionMap classical_rules(const hierarchy::PdeSystem& system);

/// Field with tau = 1 and opaque xi, eta_a of (t, x, u[k,1..m]).
VectorField generic_ansatz(int m);

/// Xi^(2)(Delta_m) restricted to the conditional manifold, one expression
/// per equation.
std::vector<Expr> determining_polynomials(int m, const VectorField& ansatz);

// ---------------------------------------------------------------------------
// Verification drivers

struct KappaResult {
  int m = 0;
  symcore::UPoly constraint;   ///< primitive gcd of the pure-kappa equations
  std::vector<Rational> roots; ///< its rational roots
  std::size_t equations = 0;   ///< determining equations before elimination
  std::size_t eliminated = 0;  ///< unknown functions solved for
  bool divisible = false;      ///< divisible by the expected factor
  std::string expected;        ///< the expected factor, printed

  nlohmann::json to_json() const;
};

/// Inserts xi = kappa u_1 + f(t,x)/2 and a cubic polynomial eta with opaque
/// (t,x) coefficients, splits the residuals into determining equations and
/// eliminates unknowns that appear linearly with constant coefficient.
/// What survives with no unknowns left is a set of polynomials in kappa.
KappaResult verify_kappa_constraint(int m);

struct CoefficientEntry {
  int equation = 0;
  std::string monomial;
  /// Multiplier of each next-tier residual, keyed by its 1-based index.
  std::map<int, Expr> combination;
};

struct TheoremReport {
  int m = 0;
  bool passed = false;
  std::string failure;
  std::vector<CoefficientEntry> coefficient_map;
  std::map<std::string, std::size_t> term_counts;
  double wall_time_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const;
};

/// Applies the conditional symmetry field of the m-component system, checks
/// that every coefficient of the restricted residual (as a polynomial in
/// u_a, u_a,x) is a combination of the next system's residuals, and that
/// substituting that system's solved form leaves exactly zero.
TheoremReport verify_theorem(int m);

struct ClassicalReport {
  int m = 0;
  bool passed = false;
  std::vector<std::string> failures;
  double wall_time_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const;
};

/// Checks each field is a classical symmetry: Xi^(2)(Delta_m) vanishes
/// once u_t and its consequences are replaced from the solved form.
ClassicalReport verify_classical(int m, const std::vector<VectorField>& generators);

}  // namespace burgers::prolong
