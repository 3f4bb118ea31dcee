#include "burgers/liealg.hpp"

#include <map>
#include <set>
#include <sstream>

#include "burgers/symcore/calculus.hpp"
#include "burgers/symcore/collect.hpp"

namespace burgers::liealg {

using symcore::Atom;
using symcore::Expr;
using symcore::jet;
using symcore::Var;

namespace {

VectorField make(int m, int k, Expr tau, Expr xi, std::vector<Expr> etas) {
  VectorField f;
  f.m = m;
  f.tier = k;
  f.tau = std::move(tau);
  f.xi = std::move(xi);
  f.etas = std::move(etas);
  return f;
}

std::vector<Expr> components(const VectorField& f) {
  std::vector<Expr> c = {f.tau, f.xi};
  c.insert(c.end(), f.etas.begin(), f.etas.end());
  return c;
}

Expr act(const VectorField& f, const Expr& g) {
  std::vector<Expr> parts = {f.tau * symcore::partial(g, Atom::indep(Var::t)),
                             f.xi * symcore::partial(g, Atom::indep(Var::x))};
  for (int a = 1; a <= f.m; ++a) parts.push_back(f.etas[a - 1] * symcore::partial(g, Atom::jet({f.tier, a, 0, 0})));
  return symcore::sum(parts);
}

// Flattens the components of a field into (component, monomial) -> rational.
std::map<std::pair<std::size_t, std::string>, Rational> coordinates(const VectorField& f) {
  std::map<std::pair<std::size_t, std::string>, Rational> out;
  auto comps = components(f);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (const auto& [mono, c] : symcore::collect(comps[i], [](const Atom& a) { return a.is_variable(); })) {
      auto v = c.constant_value();
      if (!v) throw std::invalid_argument("generator coefficients must be polynomial in t, x and u");
      out[{i, symcore::to_string(mono)}] = *v;
    }
  }
  return out;
}

std::string combination(const std::array<Rational, StructureConstants::kDim>& row) {
  std::string s;
  for (int l = 0; l < StructureConstants::kDim; ++l) {
    const Rational& c = row[l];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    s += s.empty() ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
    if (!mag.is_one()) s += mag.str() + "*";
    s += "X" + std::to_string(l + 1);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::vector<VectorField> generators(int m) {
  const int k = hierarchy::tier_of(m);
  const Expr t = symcore::t_var(), x = symcore::x_var();
  auto u = [&](int a) { return jet(k, a); };
  std::vector<Expr> zero(static_cast<std::size_t>(m));
  std::vector<Expr> e3, e4, e5;
  if (m == 1) {
    e3 = {-u(1)};
    e4 = {Expr(1)};
    e5 = {x - t * u(1)};
  } else if (m == 2) {
    e3 = {-u(1), Expr(-2) * u(2)};
    e4 = {Expr(2), -u(1)};
    e5 = {Expr(2) * x - t * u(1), -(x * u(1) + Expr(2) * t * u(2) + Expr(2))};
  } else {
    for (int a = 1; a <= m; ++a) e3.push_back(Expr(-a) * u(a));
    e4.push_back(Expr(m));
    for (int a = 2; a <= m; ++a) e4.push_back(Expr(a - m - 1) * u(a - 1));
    e5.push_back(Expr(m) * x - t * u(1));
    e5.push_back(-(Expr(m - 1) * (x * u(1) + Expr(m)) + Expr(2) * t * u(2)));
    for (int a = 3; a <= m; ++a)
      e5.push_back(-(Expr(a) * t * u(a) + Expr(m - a + 1) * (x * u(a - 1) - Expr(m - a + 2) * u(a - 2))));
  }
  return {make(m, k, Expr(1), Expr(), zero), make(m, k, Expr(), Expr(1), zero),
          make(m, k, Expr(2) * t, x, e3),     make(m, k, Expr(), t, e4),
          make(m, k, t * t, t * x, e5)};
}

VectorField commutator(const VectorField& a, const VectorField& b) {
  if (a.m != b.m || a.tier != b.tier || a.etas.size() != b.etas.size())
    throw std::invalid_argument("commutator of fields on different coordinates");
  auto ca = components(a), cb = components(b);
  std::vector<Expr> c;
  for (std::size_t i = 0; i < ca.size(); ++i) c.push_back(act(a, cb[i]) - act(b, ca[i]));
  return make(a.m, a.tier, c[0], c[1], std::vector<Expr>(c.begin() + 2, c.end()));
}

std::vector<Rational> decompose(const VectorField& v, const std::vector<VectorField>& basis) {
  // Exact Gauss-Jordan on the augmented system, one row per coordinate.
  std::set<std::pair<std::size_t, std::string>> keys;
  auto target = coordinates(v);
  std::vector<std::map<std::pair<std::size_t, std::string>, Rational>> cols;
  for (const auto& b : basis) cols.push_back(coordinates(b));
  for (const auto& [key, _] : target) keys.insert(key);
  for (const auto& col : cols)
    for (const auto& [key, _] : col) keys.insert(key);

  const std::size_t n = basis.size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& key : keys) {
    std::vector<Rational> row(n + 1);
    for (std::size_t l = 0; l < n; ++l)
      if (auto it = cols[l].find(key); it != cols[l].end()) row[l] = it->second;
    if (auto it = target.find(key); it != target.end()) row[n] = it->second;
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = rows[r][col].inverse();
    for (auto& v2 : rows[r]) v2 *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Rational f = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rows[i][n].is_zero()) throw NonClosureError("field lies outside the span of the basis");
  if (r < n) throw NonClosureError("basis fields are linearly dependent");
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < r; ++i) out[pivot_col[i]] = rows[i][n];
  return out;
}

StructureConstants structure_constants(const std::vector<VectorField>& basis) {
  if (basis.size() != StructureConstants::kDim) throw std::invalid_argument("expected five generators");
  StructureConstants sc;
  for (int i = 0; i < StructureConstants::kDim; ++i) {
    for (int j = i + 1; j < StructureConstants::kDim; ++j) {
      auto coeffs = decompose(commutator(basis[i], basis[j]), basis);
      for (int l = 0; l < StructureConstants::kDim; ++l) {
        sc.c[i][j][l] = coeffs[l];
        sc.c[j][i][l] = -coeffs[l];
      }
    }
  }
  return sc;
}

StructureConstants structure_constants(int m) { return structure_constants(generators(m)); }

bool StructureConstants::antisymmetric() const {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int l = 0; l < kDim; ++l)
        if (c[i][j][l] != -c[j][i][l]) return false;
  return true;
}

std::vector<std::string> StructureConstants::jacobi_violations() const {
  std::vector<std::string> out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int l = 0; l < kDim; ++l)
        for (int p = 0; p < kDim; ++p) {
          Rational s;
          for (int n = 0; n < kDim; ++n)
            s += c[i][j][n] * c[n][l][p] + c[j][l][n] * c[n][i][p] + c[l][i][n] * c[n][j][p];
          if (!s.is_zero())
            out.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(l + 1) +
                          ") component " + std::to_string(p + 1) + ": " + s.str());
        }
  return out;
}

std::string StructureConstants::table() const {
  std::vector<std::vector<std::string>> cells(kDim + 1, std::vector<std::string>(kDim + 1));
  cells[0][0] = "[ , ]";
  for (int i = 0; i < kDim; ++i) {
    cells[0][i + 1] = "X" + std::to_string(i + 1);
    cells[i + 1][0] = "X" + std::to_string(i + 1);
    for (int j = 0; j < kDim; ++j) cells[i + 1][j + 1] = combination(c[i][j]);
  }
  std::vector<std::size_t> width(kDim + 1, 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << row[j];
      if (j + 1 < row.size()) os << std::string(width[j] - row[j].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json StructureConstants::to_json() const {
  nlohmann::json brackets = nlohmann::json::object();
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) brackets["[X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + "]"] = combination(c[i][j]);
  return brackets;
}

IsomorphismReport isomorphism_check(int m1, int m2) {
  IsomorphismReport rep;
  rep.m1 = m1;
  rep.m2 = m2;
  auto a = structure_constants(m1), b = structure_constants(m2);
  for (int i = 0; i < StructureConstants::kDim; ++i)
    for (int j = i + 1; j < StructureConstants::kDim; ++j)
      if (a.c[i][j] != b.c[i][j])
        rep.differences.push_back("[X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + "]: " +
                                  combination(a.c[i][j]) + " vs " + combination(b.c[i][j]));
  rep.identical = rep.differences.empty();
  return rep;
}

}  // namespace burgers::liealg
