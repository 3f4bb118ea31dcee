#include "burgers/symcore/expr.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace burgers::symcore {

namespace detail {
struct AtomPayload {
  std::string name;
  FunctionSymbolPtr symbol;
  std::vector<int> derivs;
  Expr arg;
  Rational exponent{1};
};
}  // namespace detail

namespace {

const std::vector<Term>& empty_terms() {
  static const std::vector<Term> empty;
  return empty;
}

std::strong_ordering compare_exprs(const Expr& a, const Expr& b);

bool needs_fixup(const Monomial& m) {
  int exps = 0;
  const Expr* last_pow_base = nullptr;
  for (const auto& f : m.factors) {
    if (f.atom.kind() != Atom::Kind::Apply) continue;
    if (f.atom.fn() == ElemFn::Exp) {
      if (f.power != 1 || ++exps > 1) return true;
    } else if (f.atom.fn() == ElemFn::Pow) {
      if (f.power != 1) return true;
      // Pow atoms sort by exponent before base, so scan pairwise.
      if (last_pow_base != nullptr) {
        for (const auto& g : m.factors) {
          if (&g == &f) break;
          if (g.atom.kind() == Atom::Kind::Apply && g.atom.fn() == ElemFn::Pow && g.atom.arg() == f.atom.arg())
            return true;
        }
      }
      last_pow_base = &f.atom.arg();
    }
  }
  return false;
}

// Folds exp and pow factors of a monomial back into canonical shape.
Expr fixup(const Monomial& m, const Rational& coef) {
  Monomial rest;
  Expr exp_arg;
  bool has_exp = false;
  std::vector<std::pair<Expr, Rational>> pows;
  for (const auto& f : m.factors) {
    if (f.atom.kind() == Atom::Kind::Apply && f.atom.fn() == ElemFn::Exp) {
      exp_arg += Expr(Rational(f.power)) * f.atom.arg();
      has_exp = true;
    } else if (f.atom.kind() == Atom::Kind::Apply && f.atom.fn() == ElemFn::Pow) {
      Rational q = f.atom.exponent() * Rational(f.power);
      auto it = std::find_if(pows.begin(), pows.end(), [&](const auto& p) { return p.first == f.atom.arg(); });
      if (it == pows.end())
        pows.emplace_back(f.atom.arg(), q);
      else
        it->second += q;
    } else {
      rest.factors.push_back(f);
    }
  }
  Expr out = term_expr(rest, coef);
  if (has_exp) out *= exp(exp_arg);
  for (const auto& [base, q] : pows) out *= rpow(base, q);
  return out;
}

// Multiplies two monomials; returns false when the product needs fixup.
bool multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.factors.clear();
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  bool has_apply = false;
  while (i < a.factors.size() && j < b.factors.size()) {
    auto c = a.factors[i].atom <=> b.factors[j].atom;
    if (c < 0) {
      out.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      out.factors.push_back(b.factors[j++]);
    } else {
      int p = a.factors[i].power + b.factors[j].power;
      if (p != 0) out.factors.push_back({a.factors[i].atom, p});
      ++i;
      ++j;
    }
    if (!out.factors.empty() && out.factors.back().atom.kind() == Atom::Kind::Apply) has_apply = true;
  }
  for (; i < a.factors.size(); ++i) {
    out.factors.push_back(a.factors[i]);
    has_apply = has_apply || a.factors[i].atom.kind() == Atom::Kind::Apply;
  }
  for (; j < b.factors.size(); ++j) {
    out.factors.push_back(b.factors[j]);
    has_apply = has_apply || b.factors[j].atom.kind() == Atom::Kind::Apply;
  }
  return !(has_apply && needs_fixup(out));
}

std::strong_ordering compare_terms(const Term& a, const Term& b) {
  auto c = compare(a.mono, b.mono);
  if (c != 0) return c;
  return a.coef <=> b.coef;
}

std::strong_ordering compare_exprs(const Expr& a, const Expr& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return ta.size() <=> tb.size();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    auto c = compare_terms(ta[i], tb[i]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_int_vectors(const std::vector<int>& a, const std::vector<int>& b) {
  int sa = 0, sb = 0;
  for (int v : a) sa += v;
  for (int v : b) sb += v;
  if (sa != sb) return sa <=> sb;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

const char* elem_name(ElemFn fn) {
  switch (fn) {
    case ElemFn::Exp: return "exp";
    case ElemFn::Sin: return "sin";
    case ElemFn::Cos: return "cos";
    case ElemFn::Sinh: return "sinh";
    case ElemFn::Cosh: return "cosh";
    case ElemFn::Tanh: return "tanh";
    case ElemFn::Pow: return "pow";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Atom

Atom Atom::indep(Var v) {
  Atom a;
  a.kind_ = Kind::Indep;
  a.var_ = v;
  return a;
}

Atom Atom::jet(const JetCoord& j) {
  if (j.alpha < 1 || j.tier < 0 || j.nt < 0 || j.nx < 0) throw std::invalid_argument("invalid jet coordinate");
  Atom a;
  a.kind_ = Kind::Jet;
  a.jet_ = j;
  return a;
}

Atom Atom::param(const std::string& name) {
  Atom a;
  a.kind_ = Kind::Param;
  auto p = std::make_shared<detail::AtomPayload>();
  p->name = name;
  a.payload_ = std::move(p);
  return a;
}

Atom Atom::function(FunctionSymbolPtr symbol, std::vector<int> derivs) {
  if (!symbol) throw std::invalid_argument("null function symbol");
  if (derivs.empty()) derivs.assign(symbol->args.size(), 0);
  if (derivs.size() != symbol->args.size()) throw std::invalid_argument("derivative index does not match signature");
  Atom a;
  a.kind_ = Kind::Func;
  auto p = std::make_shared<detail::AtomPayload>();
  p->symbol = std::move(symbol);
  p->derivs = std::move(derivs);
  a.payload_ = std::move(p);
  return a;
}

Atom Atom::apply(ElemFn fn, const Expr& arg, const Rational& exponent) {
  Atom a;
  a.kind_ = Kind::Apply;
  a.fn_ = fn;
  auto p = std::make_shared<detail::AtomPayload>();
  p->arg = arg;
  p->exponent = exponent;
  a.payload_ = std::move(p);
  return a;
}

const std::string& Atom::name() const {
  if (kind_ == Kind::Func) return payload_->symbol->name;
  if (kind_ != Kind::Param) throw std::logic_error("atom has no name");
  return payload_->name;
}

const FunctionSymbolPtr& Atom::symbol() const {
  if (kind_ != Kind::Func) throw std::logic_error("atom is not a function symbol");
  return payload_->symbol;
}

const std::vector<int>& Atom::derivs() const {
  if (kind_ != Kind::Func) throw std::logic_error("atom is not a function symbol");
  return payload_->derivs;
}

const Expr& Atom::arg() const {
  if (kind_ != Kind::Apply) throw std::logic_error("atom is not an application");
  return payload_->arg;
}

const Rational& Atom::exponent() const {
  if (kind_ != Kind::Apply) throw std::logic_error("atom is not an application");
  return payload_->exponent;
}

Atom Atom::differentiated(std::size_t index) const {
  auto d = derivs();
  d.at(index) += 1;
  return function(symbol(), std::move(d));
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Atom::Kind::Indep:
      return a.var_ <=> b.var_;
    case Atom::Kind::Jet:
      return a.jet_ <=> b.jet_;
    case Atom::Kind::Param:
      if (a.payload_ == b.payload_) return std::strong_ordering::equal;
      return a.payload_->name <=> b.payload_->name;
    case Atom::Kind::Func: {
      if (a.payload_ == b.payload_) return std::strong_ordering::equal;
      auto c = compare_symbols(*a.payload_->symbol, *b.payload_->symbol);
      if (c != 0) return c;
      return compare_int_vectors(a.payload_->derivs, b.payload_->derivs);
    }
    case Atom::Kind::Apply: {
      if (a.payload_ == b.payload_) return std::strong_ordering::equal;
      if (a.fn_ != b.fn_) return a.fn_ <=> b.fn_;
      auto c = a.payload_->exponent <=> b.payload_->exponent;
      if (c != 0) return c;
      return compare_exprs(a.payload_->arg, b.payload_->arg);
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// FunctionSymbol

FunctionSymbolPtr FunctionSymbol::make(std::string name, std::vector<Atom> args) {
  for (const auto& a : args)
    if (a.kind() != Atom::Kind::Indep && a.kind() != Atom::Kind::Jet)
      throw std::invalid_argument("function arguments must be t, x or jet coordinates");
  return std::make_shared<const FunctionSymbol>(FunctionSymbol{std::move(name), std::move(args)});
}

std::optional<std::size_t> FunctionSymbol::arg_index(const Atom& a) const {
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i] == a) return i;
  return std::nullopt;
}

std::strong_ordering compare_symbols(const FunctionSymbol& a, const FunctionSymbol& b) {
  if (&a == &b) return std::strong_ordering::equal;
  if (auto c = a.name <=> b.name; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

// ---------------------------------------------------------------------------
// Monomial

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.power;
  return d;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return db <=> da;
  std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fa = a.factors[i];
    const auto& fb = b.factors[i];
    auto c = fa.atom <=> fb.atom;
    if (c != 0) return c;
    if (fa.power != fb.power) return fb.power <=> fa.power;
  }
  return b.factors.size() <=> a.factors.size();
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(const Rational& value) {
  if (!value.is_zero()) terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{Monomial{}, value}});
}

Expr::Expr(const Atom& atom) {
  terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{Monomial{{Factor{atom, 1}}}, Rational(1)}});
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) < 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  if (out.empty()) return Expr();
  return Expr(std::make_shared<const std::vector<Term>>(std::move(out)));
}

const std::vector<Term>& Expr::terms() const { return terms_ ? *terms_ : empty_terms(); }

std::optional<Rational> Expr::constant_value() const {
  if (!terms_) return Rational(0);
  if (terms_->size() == 1 && terms_->front().mono.is_one()) return terms_->front().coef;
  return std::nullopt;
}

Expr Expr::operator-() const {
  if (!terms_) return *this;
  auto t = *terms_;
  for (auto& term : t) term.coef = -term.coef;
  return Expr(std::make_shared<const std::vector<Term>>(std::move(t)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() && j < tb.size()) {
    auto c = compare(ta[i].mono, tb[j].mono);
    if (c < 0) {
      out.push_back(ta[i++]);
    } else if (c > 0) {
      out.push_back(tb[j++]);
    } else {
      Rational s = ta[i].coef + tb[j].coef;
      if (!s.is_zero()) out.push_back(Term{ta[i].mono, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), ta.begin() + static_cast<std::ptrdiff_t>(i), ta.end());
  out.insert(out.end(), tb.begin() + static_cast<std::ptrdiff_t>(j), tb.end());
  if (out.empty()) return Expr();
  return Expr(std::make_shared<const std::vector<Term>>(std::move(out)));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (auto c = a.constant_value()) {
    if (c->is_one()) return b;
    std::vector<Term> t = b.terms();
    for (auto& term : t) term.coef *= *c;
    return Expr(std::make_shared<const std::vector<Term>>(std::move(t)));
  }
  if (b.is_constant()) return b * a;
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  Monomial m;
  Expr slow;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (multiply_monomials(ta.mono, tb.mono, m))
        out.push_back(Term{m, ta.coef * tb.coef});
      else
        slow += fixup(m, ta.coef * tb.coef);
    }
  }
  return Expr::from_terms(std::move(out)) + slow;
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("division by zero expression");
  if (auto c = b.constant_value()) return a * Expr(c->inverse());
  if (b.size() == 1) {
    const auto& t = b.terms().front();
    Monomial inv = t.mono;
    for (auto& f : inv.factors) f.power = -f.power;
    Expr recip = needs_fixup(inv) ? fixup(inv, t.coef.inverse()) : term_expr(inv, t.coef.inverse());
    return a * recip;
  }
  return a * rpow(b, Rational(-1));
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }
Expr& Expr::operator/=(const Expr& o) { return *this = *this / o; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_ == b.terms_) return true;
  return a.terms() == b.terms();
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) { return compare_exprs(a, b); }

// ---------------------------------------------------------------------------
// Constructors

Expr var(Var v) { return Expr(Atom::indep(v)); }
Expr jet(const JetCoord& j) { return Expr(Atom::jet(j)); }
Expr param(const std::string& name) { return Expr(Atom::param(name)); }
Expr function(const FunctionSymbolPtr& symbol) { return Expr(Atom::function(symbol)); }

Expr term_expr(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return Expr();
  return Expr::from_terms({Term{m, c}});
}

Expr sum(const std::vector<Expr>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.size();
  std::vector<Term> all;
  all.reserve(n);
  for (const auto& p : parts) all.insert(all.end(), p.terms().begin(), p.terms().end());
  return Expr::from_terms(std::move(all));
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent < 0) return Expr(1) / pow(base, -exponent);
  if (auto c = base.constant_value()) return Expr(burgers::pow(*c, exponent));
  if (base.size() == 1) {
    const auto& t = base.terms().front();
    Monomial m = t.mono;
    for (auto& f : m.factors) f.power *= exponent;
    Rational c = burgers::pow(t.coef, exponent);
    return needs_fixup(m) ? fixup(m, c) : term_expr(m, c);
  }
  Expr result(1);
  Expr b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

Expr rpow(const Expr& base, const Rational& q) {
  if (q.is_zero()) return Expr(1);
  if (q.is_integer()) {
    if (q.num() > 0 || base.size() <= 1) return pow(base, static_cast<int>(q.num()));
    return Expr(Atom::apply(ElemFn::Pow, base, q));
  }
  if (base.is_zero()) {
    if (q.sign() < 0) throw std::domain_error("negative power of zero");
    return Expr();
  }
  if (auto c = base.constant_value(); c && c->is_one()) return Expr(1);
  return Expr(Atom::apply(ElemFn::Pow, base, q));
}

Expr apply(ElemFn fn, const Expr& arg) {
  if (fn == ElemFn::Pow) throw std::invalid_argument("use rpow for powers");
  if (arg.is_zero()) {
    switch (fn) {
      case ElemFn::Exp:
      case ElemFn::Cos:
      case ElemFn::Cosh:
        return Expr(1);
      default:
        return Expr();
    }
  }
  return Expr(Atom::apply(fn, arg));
}

Expr exp(const Expr& arg) { return apply(ElemFn::Exp, arg); }
Expr sin(const Expr& arg) { return apply(ElemFn::Sin, arg); }
Expr cos(const Expr& arg) { return apply(ElemFn::Cos, arg); }
Expr sinh(const Expr& arg) { return apply(ElemFn::Sinh, arg); }
Expr cosh(const Expr& arg) { return apply(ElemFn::Cosh, arg); }
Expr tanh(const Expr& arg) { return apply(ElemFn::Tanh, arg); }

// ---------------------------------------------------------------------------
// Queries

namespace {
bool atom_contains(const Atom& x, const Atom& a) {
  if (x == a) return true;
  if (x.kind() == Atom::Kind::Func) {
    for (const auto& arg : x.symbol()->args)
      if (arg == a) return true;
  } else if (x.kind() == Atom::Kind::Apply) {
    return contains(x.arg(), a);
  }
  return false;
}
}  // namespace

bool contains(const Expr& e, const Atom& a) {
  for (const auto& t : e.terms())
    for (const auto& f : t.mono.factors)
      if (atom_contains(f.atom, a)) return true;
  return false;
}

bool uses_symbol(const Expr& e, const FunctionSymbol& symbol) {
  for (const auto& t : e.terms()) {
    for (const auto& f : t.mono.factors) {
      if (f.atom.kind() == Atom::Kind::Func && compare_symbols(*f.atom.symbol(), symbol) == 0) return true;
      if (f.atom.kind() == Atom::Kind::Apply && uses_symbol(f.atom.arg(), symbol)) return true;
    }
  }
  return false;
}

std::vector<Atom> atoms(const Expr& e) {
  std::vector<Atom> out;
  for (const auto& t : e.terms())
    for (const auto& f : t.mono.factors) out.push_back(f.atom);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(Var v) { return v == Var::t ? "t" : "x"; }

std::string to_string(const Atom& a) {
  switch (a.kind()) {
    case Atom::Kind::Indep:
      return to_string(a.var());
    case Atom::Kind::Jet: {
      const auto& j = a.jet();
      std::string s = "u[" + std::to_string(j.tier) + "," + std::to_string(j.alpha) + "]";
      if (j.order() > 0) s += "_" + std::string(static_cast<std::size_t>(j.nt), 't') + std::string(static_cast<std::size_t>(j.nx), 'x');
      return s;
    }
    case Atom::Kind::Param:
      return a.name();
    case Atom::Kind::Func: {
      const auto& sym = *a.symbol();
      std::string call = sym.name + "(";
      for (std::size_t i = 0; i < sym.args.size(); ++i) call += (i ? "," : "") + to_string(sym.args[i]);
      call += ")";
      const auto& d = a.derivs();
      bool derived = std::any_of(d.begin(), d.end(), [](int v) { return v != 0; });
      if (!derived) return call;
      std::string s = "d(" + call;
      for (std::size_t i = 0; i < d.size(); ++i)
        for (int k = 0; k < d[i]; ++k) s += "," + to_string(sym.args[i]);
      return s + ")";
    }
    case Atom::Kind::Apply:
      if (a.fn() == ElemFn::Pow) return "pow(" + to_string(a.arg()) + "," + a.exponent().str() + ")";
      return std::string(elem_name(a.fn())) + "(" + to_string(a.arg()) + ")";
  }
  return "?";
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (i) s += "*";
    s += to_string(m.factors[i].atom);
    if (m.factors[i].power != 1) s += "^" + std::to_string(m.factors[i].power);
  }
  return s;
}

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : e.terms()) {
    bool neg = t.coef.sign() < 0;
    Rational mag = neg ? -t.coef : t.coef;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      s += mag.str();
    } else {
      if (!mag.is_one()) s += mag.str() + "*";
      s += to_string(t.mono);
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace burgers::symcore
