#include "burgers/symcore/calculus.hpp"

#include <stdexcept>

namespace burgers::symcore {

namespace {

// d/dv of a single atom, where `coord` differentiates the coordinate atoms.
template <class CoordDerivative>
Expr atom_derivative(const Atom& a, const CoordDerivative& coord);

template <class CoordDerivative>
Expr differentiate(const Expr& e, const CoordDerivative& coord) {
  std::vector<Expr> parts;
  for (const auto& term : e.terms()) {
    const auto& fs = term.mono.factors;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Expr da = atom_derivative(fs[i].atom, coord);
      if (da.is_zero()) continue;
      Monomial rest = term.mono;
      if (fs[i].power == 1)
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(i));
      else
        rest.factors[i].power -= 1;
      parts.push_back(term_expr(rest, term.coef * Rational(fs[i].power)) * da);
    }
  }
  return sum(parts);
}

template <class CoordDerivative>
Expr atom_derivative(const Atom& a, const CoordDerivative& coord) {
  switch (a.kind()) {
    case Atom::Kind::Indep:
    case Atom::Kind::Jet:
    case Atom::Kind::Param:
      return coord(a);
    case Atom::Kind::Func: {
      std::vector<Expr> parts;
      const auto& args = a.symbol()->args;
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr d = coord(args[i]);
        if (!d.is_zero()) parts.push_back(Expr(a.differentiated(i)) * d);
      }
      return sum(parts);
    }
    case Atom::Kind::Apply: {
      Expr darg = differentiate(a.arg(), coord);
      if (darg.is_zero()) return Expr();
      const Expr& g = a.arg();
      switch (a.fn()) {
        case ElemFn::Exp: return Expr(a) * darg;
        case ElemFn::Sin: return cos(g) * darg;
        case ElemFn::Cos: return -sin(g) * darg;
        case ElemFn::Sinh: return cosh(g) * darg;
        case ElemFn::Cosh: return sinh(g) * darg;
        case ElemFn::Tanh: return (Expr(1) - pow(tanh(g), 2)) * darg;
        case ElemFn::Pow: return Expr(a.exponent()) * rpow(g, a.exponent() - Rational(1)) * darg;
      }
    }
  }
  throw std::logic_error("unhandled atom kind");
}

}  // namespace

Expr partial(const Expr& e, const Atom& wrt) {
  if (!wrt.is_variable()) throw std::invalid_argument("partial derivative needs a coordinate, got " + to_string(wrt));
  return differentiate(e, [&](const Atom& a) { return a == wrt ? Expr(1) : Expr(); });
}

Expr total_derivative(const Expr& e, Var v) {
  return differentiate(e, [v](const Atom& a) -> Expr {
    switch (a.kind()) {
      case Atom::Kind::Indep: return a.var() == v ? Expr(1) : Expr();
      case Atom::Kind::Jet: return jet(a.jet().derivative(v));
      default: return Expr();
    }
  });
}

Expr total_derivative(const Expr& e, int nt, int nx) {
  Expr r = e;
  for (int i = 0; i < nt; ++i) r = total_derivative(r, Var::t);
  for (int i = 0; i < nx; ++i) r = total_derivative(r, Var::x);
  return r;
}

}  // namespace burgers::symcore
