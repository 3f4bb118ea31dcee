#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "burgers/symcore/expr.hpp"

namespace burgers::symcore {

/// Point values for numeric evaluation. Jets not listed evaluate through
/// `jet_fallback` when it is set.
template <class Scalar>
struct Valuation {
  Scalar t{0};
  Scalar x{0};
  std::map<JetCoord, Scalar> jets;
  std::map<std::string, Scalar> params;
  std::function<Scalar(const JetCoord&)> jet_fallback;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
Scalar evaluate(const Expr& e, const Valuation<Scalar>& at);

namespace detail {

template <class Scalar>
Scalar int_power(Scalar b, int p) {
  if (p < 0) return Scalar(1) / int_power(b, -p);
  Scalar r(1);
  while (p != 0) {
    if (p & 1) r *= b;
    p >>= 1;
    if (p != 0) b *= b;
  }
  return r;
}

template <class Scalar>
Scalar evaluate_atom(const Atom& a, const Valuation<Scalar>& at) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::pow;
  using std::sin;
  using std::sinh;
  using std::tanh;
  switch (a.kind()) {
    case Atom::Kind::Indep:
      return a.var() == Var::t ? at.t : at.x;
    case Atom::Kind::Jet: {
      if (auto it = at.jets.find(a.jet()); it != at.jets.end()) return it->second;
      if (at.jet_fallback) return at.jet_fallback(a.jet());
      throw EvaluationError("no value for " + to_string(a));
    }
    case Atom::Kind::Param: {
      if (auto it = at.params.find(a.name()); it != at.params.end()) return it->second;
      throw EvaluationError("no value for parameter " + a.name());
    }
    case Atom::Kind::Func:
      throw EvaluationError("cannot evaluate opaque function " + to_string(a));
    case Atom::Kind::Apply: {
      Scalar g = evaluate(a.arg(), at);
      switch (a.fn()) {
        case ElemFn::Exp: return exp(g);
        case ElemFn::Sin: return sin(g);
        case ElemFn::Cos: return cos(g);
        case ElemFn::Sinh: return sinh(g);
        case ElemFn::Cosh: return cosh(g);
        case ElemFn::Tanh: return tanh(g);
        case ElemFn::Pow:
          if (a.exponent().is_integer()) return int_power(g, static_cast<int>(a.exponent().num()));
          return pow(g, Scalar(a.exponent().to_double()));
      }
    }
  }
  throw EvaluationError("unhandled atom");
}

}  // namespace detail

template <class Scalar>
Scalar evaluate(const Expr& e, const Valuation<Scalar>& at) {
  Scalar total(0);
  for (const auto& term : e.terms()) {
    Scalar v(term.coef.to_double());
    for (const auto& f : term.mono.factors) v *= detail::int_power(detail::evaluate_atom(f.atom, at), f.power);
    total += v;
  }
  return total;
}

}  // namespace burgers::symcore
