#include "burgers/symcore/parse.hpp"

#include <cctype>

#include "burgers/symcore/calculus.hpp"

namespace burgers::symcore {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : s_(text), ctx_(ctx) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    try {
      return Rational::parse(s_.substr(start, pos_ - start)).num();
    } catch (const RationalOverflow&) {
      pos_ = start;
      fail("integer literal out of range");
    }
  }

  Rational rational() {
    bool neg = accept('-');
    Rational r(integer());
    if (accept('/')) {
      std::int64_t d = integer();
      if (d == 0) fail("zero denominator");
      r = r / Rational(d);
    }
    return neg ? -r : r;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        Expr d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        e /= d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    bool neg = accept('-');
    auto n = integer();
    if (n > 1000) fail("exponent too large");
    int e = static_cast<int>(n);
    if (neg && base.is_zero()) fail("negative power of zero");
    return pow(base, neg ? -e : e);
  }

  // A coordinate atom: t, x, a jet or a declared parameter.
  Atom coord() {
    skip_ws();
    std::size_t at = pos_;
    Expr e = primary();
    if (e.size() == 1 && e.terms()[0].coef.is_one() && e.terms()[0].mono.factors.size() == 1 &&
        e.terms()[0].mono.factors[0].power == 1 && e.terms()[0].mono.factors[0].atom.is_variable())
      return e.terms()[0].mono.factors[0].atom;
    pos_ = at;
    fail("expected t, x, a jet coordinate or a parameter");
  }

  Atom jet_atom() {
    expect('[');
    auto tier = integer();
    expect(',');
    auto alpha = integer();
    expect(']');
    if (alpha < 1) fail("component index must be positive");
    JetCoord j{static_cast<int>(tier), static_cast<int>(alpha), 0, 0};
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && (s_[pos_] == 't' || s_[pos_] == 'x')) (s_[pos_++] == 't' ? j.nt : j.nx)++;
      if (start == pos_) fail("expected derivative letters t or x");
    }
    return Atom::jet(j);
  }

  Expr call(const std::string& name, std::size_t at) {
    static const std::map<std::string, ElemFn> elementary = {{"exp", ElemFn::Exp},   {"sin", ElemFn::Sin},
                                                             {"cos", ElemFn::Cos},   {"sinh", ElemFn::Sinh},
                                                             {"cosh", ElemFn::Cosh}, {"tanh", ElemFn::Tanh}};
    if (auto it = elementary.find(name); it != elementary.end()) {
      Expr arg = expr();
      expect(')');
      return symcore::apply(it->second, arg);
    }
    if (name == "pow") {
      Expr base = expr();
      expect(',');
      Rational q = rational();
      expect(')');
      if (base.is_zero() && q.sign() < 0) fail("negative power of zero");
      return rpow(base, q);
    }
    if (name == "D") {
      Expr e = expr();
      do {
        std::string v = ident();
        if (v != "t" && v != "x") fail("total derivative needs t or x");
        e = total_derivative(e, v == "t" ? Var::t : Var::x);
      } while (accept(','));
      expect(')');
      return e;
    }
    if (name == "d") {
      Expr e = expr();
      while (accept(',')) e = partial(e, coord());
      expect(')');
      return e;
    }
    if (ctx_.params.count(name)) {
      pos_ = at;
      fail("parameter '" + name + "' used as a function");
    }
    std::vector<Atom> args;
    if (!peek(')')) {
      do {
        Atom a = coord();
        if (a.kind() == Atom::Kind::Param) fail("function arguments must be t, x or jet coordinates");
        args.push_back(a);
      } while (accept(','));
    }
    expect(')');
    return Expr(Atom::function(FunctionSymbol::make(name, std::move(args))));
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Rational(integer()));
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    std::size_t at = pos_;
    // u[ starts a jet coordinate; anything else is an identifier.
    if (c == 'u' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '[') {
      ++pos_;
      return Expr(jet_atom());
    }
    std::string name = ident();
    if (accept('(')) return call(name, at);
    if (name == "t") return t_var();
    if (name == "x") return x_var();
    if (ctx_.params.count(name) || ctx_.implicit_params) return param(name);
    pos_ = at;
    fail("unknown symbol '" + name + "'");
  }

  std::string_view s_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParseContext& ctx) { return Parser(text, ctx).run(); }

}  // namespace burgers::symcore
