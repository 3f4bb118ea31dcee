#include "burgers/symcore/upoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace burgers::symcore {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_expr(const Expr& e, const Atom& variable) {
  std::vector<Rational> c;
  for (const auto& term : e.terms()) {
    int d = 0;
    for (const auto& f : term.mono.factors) {
      if (f.atom != variable || f.power < 0)
        throw std::invalid_argument("not a polynomial in " + to_string(variable) + ": " + to_string(e));
      d = f.power;
    }
    if (c.size() <= static_cast<std::size_t>(d)) c.resize(static_cast<std::size_t>(d) + 1);
    c[static_cast<std::size_t>(d)] += term.coef;
  }
  return UPoly(std::move(c));
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  std::int64_t l = 1;
  for (const auto& r : c_) l = std::lcm(l, r.den());
  std::int64_t g = 0;
  std::vector<Rational> out;
  for (const auto& r : c_) {
    out.push_back(r * Rational(l));
    g = std::gcd(g, out.back().num());
  }
  if (out.back().sign() < 0) g = -g;
  for (auto& r : out) r /= Rational(g);
  return UPoly(std::move(out));
}

Rational UPoly::eval(const Rational& v) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
  return r;
}

std::vector<Rational> UPoly::rational_roots() const {
  std::vector<Rational> roots;
  if (c_.empty()) return roots;
  UPoly p = primitive();
  const auto& c = p.c_;
  std::size_t low = 0;
  while (c[low].is_zero()) ++low;
  if (low > 0) roots.emplace_back(0);
  std::int64_t a0 = c[low].num();
  std::int64_t an = c.back().num();
  auto divisors = [](std::int64_t n) {
    n = n < 0 ? -n : n;
    std::vector<std::int64_t> d;
    for (std::int64_t i = 1; i * i <= n; ++i)
      if (n % i == 0) {
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
      }
    return d;
  };
  for (auto num : divisors(a0))
    for (auto den : divisors(an))
      for (int s : {1, -1}) {
        Rational r(s * num, den);
        if (p.eval(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Expr UPoly::to_expr(const Expr& variable) const {
  Expr e;
  for (std::size_t i = 0; i < c_.size(); ++i) e += Expr(c_[i]) * pow(variable, static_cast<int>(i));
  return e;
}

std::string UPoly::str(const std::string& variable) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& r = c_[k];
    if (r.is_zero()) continue;
    Rational mag = r.sign() < 0 ? -r : r;
    if (s.empty())
      s += r.sign() < 0 ? "-" : "";
    else
      s += r.sign() < 0 ? " - " : " + ";
    bool show = !mag.is_one() || k == 0;
    if (show) s += mag.str();
    if (k > 0) {
      if (show) s += "*";
      s += variable;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  std::vector<Rational> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational f = r[k + b.c_.size() - 1] / b.c_.back();
    q[k] = f;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= f * b.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    auto r = UPoly::divmod(x, y).second;
    x = std::move(y);
    y = r.primitive();
  }
  return x.primitive();
}

}  // namespace burgers::symcore
