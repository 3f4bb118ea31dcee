#pragma once

// Exact solutions of the m-component system from m solutions of the heat
// equation v_t = v_xx, through the linear system obtained by writing the
// companion matrix as -2 Phi_x Phi^{-1}.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "burgers/symcore/eigen_support.hpp"
#include "burgers/symcore/expr.hpp"
#include "json.hpp"

namespace burgers::hopfcole {

using symcore::Expr;
using symcore::ExprMatrix;
using symcore::ExprVector;

/// v_t - v_xx did not canonicalize to zero.
class NotHeatSolution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Hopf-Cole system is identically singular.
class SingularSystem : public std::runtime_error {
 public:
  SingularSystem(const std::string& what, std::vector<double> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  /// Coefficients c with sum c_i v_i (and its x-derivatives) vanishing at a
  /// sample point, normalized to unit max norm.
  const std::vector<double>& witness() const { return witness_; }

 private:
  std::vector<double> witness_;
};

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form heat solution with the catalog entry it came from.
struct HeatSolution {
  Expr v;
  nlohmann::json spec;

  /// Checks the heat equation exactly; throws NotHeatSolution.
  static HeatSolution make(Expr v, nlohmann::json spec);
};

HeatSolution heat_constant(const Rational& c);
/// exp(a^2 t + sign*a x), sign = +1 or -1.
HeatSolution heat_exponential(const Rational& a, int sign);
/// exp(-a^2 t) sin(a x).
HeatSolution heat_sine(const Rational& a);
/// exp(-a^2 t) cos(a x).
HeatSolution heat_cosine(const Rational& a);
/// p_n = x p_{n-1} + 2(n-1) t p_{n-2}, p_0 = 1, p_1 = x.
HeatSolution heat_polynomial(int n);
/// (t+t0)^{-1/2} exp(-(x-x0)^2 / (4(t+t0))), t0 > 0.
HeatSolution heat_gaussian(const Rational& t0, const Rational& x0);
/// Rational-coefficient combination of catalog entries.
HeatSolution heat_sum(const std::vector<std::pair<Rational, HeatSolution>>& parts);

/// Catalog entry {"kind": ..., ...}; see README for the kinds.
HeatSolution heat_from_json(const nlohmann::json& j);
std::vector<HeatSolution> catalog_from_json(const nlohmann::json& j);

/// Row i: ((-2)^j d^j v_i/dx^j)_{j<m} against unknowns (u_m, ..., u_1),
/// right-hand side (-2)^m d^m v_i/dx^m.
struct LinearSystem {
  ExprMatrix a;
  ExprVector b;
};

LinearSystem hopfcole_matrix(int m, const std::vector<HeatSolution>& v);

/// Division-free determinant by cofactor expansion.
Expr determinant(const ExprMatrix& a);

struct ExactSolution {
  int m = 0;
  std::vector<HeatSolution> v;
  /// u_a = numerators[a-1] / det.
  std::vector<Expr> numerators;
  Expr det;

  /// u_a as a single expression with det^{-1} kept as an atom.
  Expr component(int alpha) const;

  /// Values u_1..u_m at a point by a numeric solve of the linear system.
  Eigen::VectorXd evaluate(double t, double x) const;
  /// Values from the closed form numerators / det.
  Eigen::VectorXd evaluate_closed_form(double t, double x) const;
  /// True when |det| < 1e-8 times the product of the row norms.
  bool near_singular(double t, double x) const;

  struct PointResidual {
    bool guarded = false;
    Eigen::VectorXd u;
    Eigen::VectorXd residual;
  };
  /// Residuals of the m equations at a point from exact derivatives.
  PointResidual residual_at(double t, double x) const;

  nlohmann::json to_json() const;

  // Derivatives of v_i up to x-order m+2 and t-order 1, filled by solve_exact.
  std::vector<std::vector<Expr>> vx;   // vx[i][j] = d^j v_i / dx^j
  std::vector<std::vector<Expr>> vtx;  // vtx[i][j] = d^{j+1} v_i / dt dx^j
};

ExactSolution solve_exact(int m, const std::vector<HeatSolution>& v);

struct CertifyOptions {
  double tol = 1e-10;
  /// Skip the symbolic attempt when the cleared residual would exceed this
  /// many terms in any factor.
  std::size_t symbolic_term_budget = 4000;
};

struct Sample {
  double t = 0;
  double x = 0;
};

struct CertifyReport {
  bool passed = false;
  /// "symbolic" or "numeric".
  std::string method;
  bool symbolic_zero = false;
  double max_residual = 0;
  Sample worst{};
  int worst_component = 0;
  int evaluated = 0;
  std::vector<Sample> excluded;

  nlohmann::json to_json() const;
};

/// Multiplies each residual by det^3 and checks for canonical zero.
/// Returns nullopt when over budget.
std::optional<bool> certify_symbolic(const ExactSolution& sol, std::size_t term_budget = 4000);

CertifyReport certify(const ExactSolution& sol, const std::vector<Sample>& samples, const CertifyOptions& opt = {});

/// Evenly spaced samples on [t0,t1] x [x0,x1].
std::vector<Sample> sample_grid(double t0, double t1, int nt, double x0, double x1, int nx);

/// CSV t,x,u_1..u_m; guarded points are written as nan.
std::string to_csv(const ExactSolution& sol, const std::vector<Sample>& samples);

}  // namespace burgers::hopfcole
