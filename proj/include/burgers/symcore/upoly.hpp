#pragma once

#include <string>
#include <vector>

#include "burgers/rational.hpp"
#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  /// Reads e as a polynomial in one coordinate atom; throws when e has any
  /// other atom.
  static UPoly from_expr(const Expr& e, const Atom& variable);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  /// Scaled to integer coefficients with gcd 1 and positive leading term.
  UPoly primitive() const;
  Rational eval(const Rational& v) const;
  /// Rational roots, ascending, each listed once.
  std::vector<Rational> rational_roots() const;

  Expr to_expr(const Expr& variable) const;
  std::string str(const std::string& variable) const;

  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Quotient and remainder of Euclidean division.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Greatest common divisor in primitive form.
UPoly gcd(const UPoly& a, const UPoly& b);

}  // namespace burgers::symcore
