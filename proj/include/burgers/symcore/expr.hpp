#pragma once

// Canonical polynomial expressions over jet space.
//
// An Expr is a sum of terms, each a rational coefficient times a monomial;
// a monomial is a sorted product of atoms raised to nonzero integer powers.
// Atoms are the independent variables t and x, jet coordinates u[k,a]
// with derivative counts, named constant parameters, opaque function symbols
// (possibly differentiated) and elementary function applications.
//
// Every constructor returns canonical form, so structural equality is
// semantic equality up to the identities the kernel knows about:
// commutativity, associativity, distributivity, like-term collection,
// exp(a)*exp(b) = exp(a+b) and pow(s,p)*pow(s,q) = pow(s,p+q).

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "burgers/rational.hpp"

namespace burgers::symcore {

enum class Var : std::uint8_t { t = 0, x = 1 };

/// u^{(tier)}_{alpha} differentiated nt times in t and nx times in x.
struct JetCoord {
  int tier = 1;
  int alpha = 1;
  int nt = 0;
  int nx = 0;

  JetCoord derivative(Var v, int times = 1) const {
    JetCoord j = *this;
    (v == Var::t ? j.nt : j.nx) += times;
    return j;
  }
  JetCoord base() const { return {tier, alpha, 0, 0}; }
  int order() const { return nt + nx; }

  friend auto operator<=>(const JetCoord&, const JetCoord&) = default;
};

enum class ElemFn : std::uint8_t { Exp, Sin, Cos, Sinh, Cosh, Tanh, Pow };

class Expr;
class Atom;
struct FunctionSymbol;
using FunctionSymbolPtr = std::shared_ptr<const FunctionSymbol>;

namespace detail {
struct AtomPayload;
}

/// Indivisible factor of a monomial.
class Atom {
 public:
  enum class Kind : std::uint8_t { Indep, Jet, Func, Param, Apply };

  static Atom indep(Var v);
  static Atom jet(const JetCoord& j);
  static Atom param(const std::string& name);
  /// Opaque function atom; `derivs` holds one derivative count per argument
  /// (empty means underived).
  static Atom function(FunctionSymbolPtr symbol, std::vector<int> derivs = {});
  /// Raw elementary application. Callers normally go through exp(), sin(),
  /// rpow() ... which also simplify.
  static Atom apply(ElemFn fn, const Expr& arg, const Rational& exponent = Rational(1));

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Indep || kind_ == Kind::Jet || kind_ == Kind::Param; }

  Var var() const { return var_; }
  const JetCoord& jet() const { return jet_; }
  const std::string& name() const;
  const FunctionSymbolPtr& symbol() const;
  const std::vector<int>& derivs() const;
  ElemFn fn() const { return fn_; }
  const Expr& arg() const;
  const Rational& exponent() const;

  /// Function atom with one more derivative in argument `index`.
  Atom differentiated(std::size_t index) const;

  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

 private:
  Kind kind_ = Kind::Indep;
  Var var_ = Var::t;
  ElemFn fn_ = ElemFn::Exp;
  JetCoord jet_{};
  std::shared_ptr<const detail::AtomPayload> payload_;
};

/// Opaque function with an explicit argument signature, e.g. xi(t, x, u[1,1]).
/// Arguments must be independent variables or jet coordinates.
struct FunctionSymbol {
  std::string name;
  std::vector<Atom> args;

  static FunctionSymbolPtr make(std::string name, std::vector<Atom> args);
  std::optional<std::size_t> arg_index(const Atom& a) const;
};

std::strong_ordering compare_symbols(const FunctionSymbol& a, const FunctionSymbol& b);

struct Factor {
  Atom atom;
  int power = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of atoms sorted by atom order, each atom at most once.
struct Monomial {
  std::vector<Factor> factors;

  bool is_one() const { return factors.empty(); }
  int degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical monomial order: higher total degree first, then lexicographic
/// in the atom order.
std::strong_ordering compare(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

struct Term {
  Monomial mono;
  Rational coef;
  friend bool operator==(const Term&, const Term&) = default;
};

class Expr {
 public:
  Expr() = default;
  Expr(int value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(long value) : Expr(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(long long value) : Expr(Rational(static_cast<std::int64_t>(value))) {}  // NOLINT
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const Atom& atom);

  /// Canonicalizes an arbitrary term list (sort, merge, drop zeros).
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const;
  std::size_t size() const { return terms_ ? terms_->size() : 0; }
  bool is_zero() const { return !terms_; }
  /// The value when the expression is a rational constant.
  std::optional<Rational> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Division by a constant or a single term is exact; any other
  /// denominator becomes a pow(den, -1) atom (no gcd cancellation).
  friend Expr operator/(const Expr& a, const Expr& b);

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const std::vector<Term>> terms) : terms_(std::move(terms)) {}
  std::shared_ptr<const std::vector<Term>> terms_;
};

// Constructors for the common atoms.
Expr var(Var v);
inline Expr t_var() { return var(Var::t); }
inline Expr x_var() { return var(Var::x); }
Expr jet(const JetCoord& j);
inline Expr jet(int tier, int alpha, int nt = 0, int nx = 0) { return jet(JetCoord{tier, alpha, nt, nx}); }
Expr param(const std::string& name);
Expr function(const FunctionSymbolPtr& symbol);

Expr pow(const Expr& base, int exponent);
/// base^q for rational q; integer exponents expand, others stay as an atom.
Expr rpow(const Expr& base, const Rational& q);
Expr exp(const Expr& arg);
Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr sinh(const Expr& arg);
Expr cosh(const Expr& arg);
Expr tanh(const Expr& arg);
Expr apply(ElemFn fn, const Expr& arg);

/// Expr built from a single coefficient times monomial.
Expr term_expr(const Monomial& m, const Rational& c = Rational(1));
/// Sum of many expressions in one sort-and-merge pass.
Expr sum(const std::vector<Expr>& parts);

/// True when the atom occurs anywhere in e, including inside function
/// signatures and elementary-function arguments.
bool contains(const Expr& e, const Atom& a);
/// True when some Func atom of e uses the given symbol.
bool uses_symbol(const Expr& e, const FunctionSymbol& symbol);
/// All atoms occurring at top level in monomials of e.
std::vector<Atom> atoms(const Expr& e);

std::string to_string(const Expr& e);
std::string to_string(const Atom& a);
std::string to_string(const Monomial& m);
std::string to_string(Var v);
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace burgers::symcore
