#include "burgers/hopfcole.hpp"

#include <Eigen/LU>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "burgers/symcore/calculus.hpp"
#include "burgers/symcore/eval.hpp"
#include "burgers/symcore/parse.hpp"

namespace burgers::hopfcole {

using symcore::Var;

namespace {

Expr dx(const Expr& e) { return symcore::total_derivative(e, Var::x); }
Expr dt(const Expr& e) { return symcore::total_derivative(e, Var::t); }

template <class Scalar = double>
Scalar eval_tx(const Expr& e, Scalar t, Scalar x) {
  symcore::Valuation<Scalar> at;
  at.t = t;
  at.x = x;
  return symcore::evaluate(e, at);
}

Rational rational_param(const nlohmann::json& p, const char* key, std::optional<Rational> fallback = std::nullopt) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw CatalogError(std::string("catalog entry missing parameter '") + key + "'");
  }
  const auto& v = p.at(key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw CatalogError(std::string("bad rational for '") + key + "': " + e.what());
    }
  }
  throw CatalogError(std::string("parameter '") + key + "' must be an integer or a rational string");
}

nlohmann::json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

// Determinant of the rows [row, n) restricted to the columns in `mask`.
// The row is n - popcount(mask), so the memo is keyed by mask alone.
Expr minor_det(const ExprMatrix& a, int row, unsigned mask, std::map<unsigned, Expr>& memo) {
  if (mask == 0) return Expr(1);
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  std::vector<Expr> parts;
  int sign = 1;
  for (int c = 0; c < a.cols(); ++c) {
    if (!(mask & (1U << c))) continue;
    const Expr& entry = a(row, c);
    if (!entry.is_zero()) {
      Expr sub = minor_det(a, row + 1, mask & ~(1U << c), memo);
      parts.push_back(sign > 0 ? entry * sub : -(entry * sub));
    }
    sign = -sign;
  }
  Expr d = symcore::sum(parts);
  memo.emplace(mask, d);
  return d;
}

// Pointwise evaluation runs in extended precision: near the determinant
// zero set the solve loses digits faster than double can spare.
using Real = long double;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct NumericSystem {
  RMatrix a, ax, axx, at;
  RVector b, bx, bxx, bt;
};

}  // namespace

HeatSolution HeatSolution::make(Expr v, nlohmann::json spec) {
  Expr defect = dt(v) - dx(dx(v));
  if (!defect.is_zero())
    throw NotHeatSolution("not a heat solution: v_t - v_xx = " + symcore::to_string(defect) + " for v = " +
                          symcore::to_string(v));
  return HeatSolution{std::move(v), std::move(spec)};
}

HeatSolution heat_constant(const Rational& c) {
  return HeatSolution::make(Expr(c), {{"kind", "constant"}, {"parameters", {{"c", rational_json(c)}}}});
}

HeatSolution heat_exponential(const Rational& a, int sign) {
  if (sign != 1 && sign != -1) throw CatalogError("exponential sign must be +1 or -1");
  Expr arg = Expr(a * a) * symcore::t_var() + Expr(a * Rational(sign)) * symcore::x_var();
  return HeatSolution::make(symcore::exp(arg),
                            {{"kind", "exponential"}, {"parameters", {{"a", rational_json(a)}, {"sign", sign}}}});
}

HeatSolution heat_sine(const Rational& a) {
  Expr v = symcore::exp(Expr(-a * a) * symcore::t_var()) * symcore::sin(Expr(a) * symcore::x_var());
  return HeatSolution::make(v, {{"kind", "sine"}, {"parameters", {{"a", rational_json(a)}}}});
}

HeatSolution heat_cosine(const Rational& a) {
  Expr v = symcore::exp(Expr(-a * a) * symcore::t_var()) * symcore::cos(Expr(a) * symcore::x_var());
  return HeatSolution::make(v, {{"kind", "cosine"}, {"parameters", {{"a", rational_json(a)}}}});
}

HeatSolution heat_polynomial(int n) {
  if (n < 0) throw CatalogError("heat polynomial degree must be nonnegative");
  Expr prev(1), cur = symcore::x_var();
  if (n == 0) cur = prev;
  for (int k = 2; k <= n; ++k) {
    Expr next = symcore::x_var() * cur + Expr(2 * (k - 1)) * symcore::t_var() * prev;
    prev = cur;
    cur = next;
  }
  return HeatSolution::make(cur, {{"kind", "heat_polynomial"}, {"parameters", {{"n", n}}}});
}

HeatSolution heat_gaussian(const Rational& t0, const Rational& x0) {
  if (t0.sign() <= 0) throw CatalogError("gaussian needs t0 > 0");
  Expr s = symcore::t_var() + Expr(t0);
  Expr dxv = symcore::x_var() - Expr(x0);
  Expr v = symcore::rpow(s, Rational(-1, 2)) * symcore::exp(Expr(Rational(-1, 4)) * dxv * dxv * symcore::rpow(s, Rational(-1)));
  return HeatSolution::make(v, {{"kind", "gaussian"}, {"parameters", {{"t0", rational_json(t0)}, {"x0", rational_json(x0)}}}});
}

HeatSolution heat_sum(const std::vector<std::pair<Rational, HeatSolution>>& parts) {
  std::vector<Expr> terms;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [c, h] : parts) {
    terms.push_back(Expr(c) * h.v);
    list.push_back({{"coef", rational_json(c)}, {"entry", h.spec}});
  }
  return HeatSolution::make(symcore::sum(terms), {{"kind", "sum"}, {"parameters", {{"terms", list}}}});
}

HeatSolution heat_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw CatalogError("catalog entry needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json p = j.value("parameters", nlohmann::json::object());
  if (kind == "constant") return heat_constant(rational_param(p, "c"));
  if (kind == "exponential") {
    int sign = p.value("sign", 1);
    return heat_exponential(rational_param(p, "a"), sign);
  }
  if (kind == "sine") return heat_sine(rational_param(p, "a"));
  if (kind == "cosine") return heat_cosine(rational_param(p, "a"));
  if (kind == "heat_polynomial") {
    if (!p.contains("n") || !p.at("n").is_number_integer()) throw CatalogError("heat_polynomial needs integer 'n'");
    return heat_polynomial(p.at("n").get<int>());
  }
  if (kind == "gaussian") return heat_gaussian(rational_param(p, "t0"), rational_param(p, "x0", Rational(0)));
  if (kind == "sum") {
    if (!p.contains("terms") || !p.at("terms").is_array()) throw CatalogError("sum needs a 'terms' array");
    std::vector<std::pair<Rational, HeatSolution>> parts;
    for (const auto& term : p.at("terms"))
      parts.emplace_back(rational_param(term, "coef", Rational(1)), heat_from_json(term.at("entry")));
    return heat_sum(parts);
  }
  if (kind == "expression") {
    if (!p.contains("text") || !p.at("text").is_string()) throw CatalogError("expression needs a 'text' string");
    Expr v;
    try {
      v = symcore::parse(p.at("text").get<std::string>());
    } catch (const symcore::ParseError& e) {
      throw CatalogError(std::string("expression: ") + e.what());
    }
    for (const auto& a : symcore::atoms(v))
      if (a.kind() == symcore::Atom::Kind::Jet || a.kind() == symcore::Atom::Kind::Func)
        throw CatalogError("expression may only depend on t and x");
    return HeatSolution::make(v, {{"kind", "expression"}, {"parameters", {{"text", p.at("text")}}}});
  }
  throw CatalogError("unknown catalog kind '" + kind + "'");
}

std::vector<HeatSolution> catalog_from_json(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_object() && j.contains("v") ? j.at("v") : j;
  if (!list.is_array()) throw CatalogError("catalog must be an array of entries or an object with a 'v' array");
  std::vector<HeatSolution> out;
  for (const auto& e : list) out.push_back(heat_from_json(e));
  return out;
}

LinearSystem hopfcole_matrix(int m, const std::vector<HeatSolution>& v) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (static_cast<int>(v.size()) != m) throw std::invalid_argument("need exactly m heat solutions");
  LinearSystem s{ExprMatrix(m, m), ExprVector(m)};
  for (int i = 0; i < m; ++i) {
    Expr d = v[i].v;
    Rational scale(1);
    for (int j = 0; j < m; ++j) {
      s.a(i, j) = Expr(scale) * d;
      d = dx(d);
      scale *= Rational(-2);
    }
    s.b(i) = Expr(scale) * d;
  }
  return s;
}

Expr determinant(const ExprMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows() > 16) throw std::invalid_argument("determinant: matrix too large for cofactor expansion");
  std::map<unsigned, Expr> memo;
  return minor_det(a, 0, (1U << a.rows()) - 1, memo);
}

Expr ExactSolution::component(int alpha) const {
  return numerators.at(alpha - 1) * symcore::rpow(det, Rational(-1));
}

namespace {

NumericSystem numeric_system(const ExactSolution& s, Real t, Real x) {
  const int m = s.m;
  NumericSystem n;
  for (auto* mat : {&n.a, &n.ax, &n.axx, &n.at}) mat->resize(m, m);
  for (auto* vec : {&n.b, &n.bx, &n.bxx, &n.bt}) vec->resize(m);
  for (int i = 0; i < m; ++i) {
    std::vector<Real> d(m + 3), dtv(m + 1);
    for (int j = 0; j <= m + 2; ++j) d[j] = eval_tx(s.vx[i][j], t, x);
    for (int j = 0; j <= m; ++j) dtv[j] = eval_tx(s.vtx[i][j], t, x);
    Real scale = 1;
    for (int j = 0; j < m; ++j) {
      n.a(i, j) = scale * d[j];
      n.ax(i, j) = scale * d[j + 1];
      n.axx(i, j) = scale * d[j + 2];
      n.at(i, j) = scale * dtv[j];
      scale *= -2;
    }
    n.b(i) = scale * d[m];
    n.bx(i) = scale * d[m + 1];
    n.bxx(i) = scale * d[m + 2];
    n.bt(i) = scale * dtv[m];
  }
  return n;
}

bool guard(const RMatrix& a, Real det) {
  Real norms = 1;
  for (int i = 0; i < a.rows(); ++i) norms *= a.row(i).norm();
  return !(std::abs(det) >= 1e-8 * norms) || norms == 0;
}

// Unknown vector is (u_m, ..., u_1).
Eigen::VectorXd to_components(const RVector& unknowns) { return unknowns.reverse().cast<double>(); }

}  // namespace

Eigen::VectorXd ExactSolution::evaluate(double t, double x) const {
  auto n = numeric_system(*this, t, x);
  return to_components(n.a.partialPivLu().solve(n.b));
}

Eigen::VectorXd ExactSolution::evaluate_closed_form(double t, double x) const {
  double d = eval_tx(det, t, x);
  Eigen::VectorXd u(m);
  for (int a = 0; a < m; ++a) u(a) = eval_tx(numerators[a], t, x) / d;
  return u;
}

bool ExactSolution::near_singular(double t, double x) const {
  auto n = numeric_system(*this, t, x);
  return guard(n.a, n.a.determinant());
}

ExactSolution::PointResidual ExactSolution::residual_at(double t, double x) const {
  auto n = numeric_system(*this, t, x);
  PointResidual r;
  auto lu = n.a.partialPivLu();
  r.guarded = guard(n.a, lu.determinant());
  if (r.guarded) return r;
  RVector w = lu.solve(n.b);
  RVector wx = lu.solve(n.bx - n.ax * w);
  RVector wxx = lu.solve(n.bxx - 2 * n.ax * wx - n.axx * w);
  RVector wt = lu.solve(n.bt - n.at * w);
  RVector u = w.reverse(), ux = wx.reverse(), uxx = wxx.reverse(), ut = wt.reverse();
  r.u = u.cast<double>();
  r.residual.resize(m);
  for (int a = 0; a < m; ++a) {
    Real res = ut(a) + u(a) * ux(0) - uxx(a);
    if (a + 1 < m) res += ux(a + 1);
    r.residual(a) = static_cast<double>(res);
  }
  return r;
}

nlohmann::json ExactSolution::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  nlohmann::json cat = nlohmann::json::array();
  for (const auto& h : v) cat.push_back(h.spec);
  j["catalog"] = cat;
  j["v"] = nlohmann::json::array();
  for (const auto& h : v) j["v"].push_back(symcore::to_string(h.v));
  j["det"] = symcore::to_string(det);
  nlohmann::json comps = nlohmann::json::object();
  for (int a = 1; a <= m; ++a)
    comps["u" + std::to_string(a)] = {{"numerator", symcore::to_string(numerators[a - 1])},
                                      {"expression", symcore::to_string(component(a))}};
  j["components"] = comps;
  return j;
}

ExactSolution solve_exact(int m, const std::vector<HeatSolution>& v) {
  LinearSystem sys = hopfcole_matrix(m, v);
  ExactSolution s;
  s.m = m;
  s.v = v;
  s.vx.resize(m);
  s.vtx.resize(m);
  for (int i = 0; i < m; ++i) {
    Expr d = v[i].v;
    for (int j = 0; j <= m + 2; ++j) {
      s.vx[i].push_back(d);
      if (j <= m) s.vtx[i].push_back(dt(d));
      d = dx(d);
    }
  }
  s.det = determinant(sys.a);

  // The kernel does not know every identity (sinh^2 - cosh^2 ...), so a
  // nonzero determinant is also checked numerically at fixed points.
  static constexpr std::array<std::array<double, 2>, 3> probes{{{0.3137, 0.4219}, {0.7071, -1.2345}, {0.1234, 2.1718}}};
  bool numerically_singular = true;
  RMatrix probe_matrix;
  for (const auto& [t, x] : probes) {
    auto n = numeric_system(s, t, x);
    Real norms = 1;
    for (int i = 0; i < m; ++i) norms *= n.a.row(i).norm();
    if (std::abs(n.a.determinant()) > 1e-12 * norms) {
      numerically_singular = false;
      break;
    }
    if (probe_matrix.size() == 0) probe_matrix = n.a;
  }
  if (s.det.is_zero() || numerically_singular) {
    if (probe_matrix.size() == 0) probe_matrix = numeric_system(s, probes[0][0], probes[0][1]).a;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(probe_matrix.transpose().cast<double>());
    lu.setThreshold(1e-9);
    Eigen::MatrixXd kernel = lu.kernel();
    std::vector<double> witness(m, 0.0);
    if (kernel.cols() > 0) {
      Eigen::VectorXd c = kernel.col(0);
      Eigen::Index idx = 0;
      c.cwiseAbs().maxCoeff(&idx);
      c /= c(idx);
      for (int i = 0; i < m; ++i) witness[i] = std::abs(c(i)) < 1e-12 ? 0.0 : c(i);
    }
    std::ostringstream msg;
    msg << "Hopf-Cole system is identically singular; dependency witness c = (";
    for (int i = 0; i < m; ++i) msg << (i ? ", " : "") << witness[i];
    msg << ") with sum c_i v_i = 0";
    throw SingularSystem(msg.str(), witness);
  }

  s.numerators.resize(m);
  for (int j = 0; j < m; ++j) {
    ExprMatrix aj = sys.a;
    aj.col(j) = sys.b;
    s.numerators[m - 1 - j] = determinant(aj);
  }
  return s;
}

std::optional<bool> certify_symbolic(const ExactSolution& sol, std::size_t term_budget) {
  const Expr& d = sol.det;
  std::size_t biggest = d.size();
  for (const auto& n : sol.numerators) biggest = std::max(biggest, n.size());
  if (biggest * d.size() * d.size() > term_budget * term_budget) return std::nullopt;

  Expr d_t = dt(d), d_x = dx(d), d_xx = dx(d_x);
  std::vector<Expr> n_t, n_x, n_xx;
  for (const auto& n : sol.numerators) {
    n_t.push_back(dt(n));
    n_x.push_back(dx(n));
    n_xx.push_back(dx(n_x.back()));
  }
  const Expr d2 = d * d;
  const Expr dx2 = d_x * d_x;
  for (int a = 0; a < sol.m; ++a) {
    const Expr& n = sol.numerators[a];
    std::vector<Expr> parts;
    parts.push_back((n_t[a] * d - n * d_t) * d);
    parts.push_back(n * (n_x[0] * d - sol.numerators[0] * d_x));
    parts.push_back(-(n_xx[a] * d2 - Expr(2) * n_x[a] * d_x * d - n * d_xx * d + Expr(2) * n * dx2));
    if (a + 1 < sol.m) parts.push_back((n_x[a + 1] * d - sol.numerators[a + 1] * d_x) * d);
    if (!symcore::sum(parts).is_zero()) return false;
  }
  return true;
}

CertifyReport certify(const ExactSolution& sol, const std::vector<Sample>& samples, const CertifyOptions& opt) {
  CertifyReport rep;
  if (auto sym = certify_symbolic(sol, opt.symbolic_term_budget)) {
    rep.method = "symbolic";
    rep.symbolic_zero = *sym;
  } else {
    rep.method = "numeric";
  }
  for (const auto& p : samples) {
    auto r = sol.residual_at(p.t, p.x);
    if (r.guarded) {
      rep.excluded.push_back(p);
      continue;
    }
    ++rep.evaluated;
    for (int a = 0; a < sol.m; ++a) {
      double e = std::abs(r.residual(a));
      if (!(e <= rep.max_residual)) {
        rep.max_residual = e;
        rep.worst = p;
        rep.worst_component = a + 1;
      }
    }
  }
  bool numeric_ok = std::isfinite(rep.max_residual) && rep.max_residual < opt.tol;
  rep.passed = rep.method == "symbolic" ? rep.symbolic_zero && numeric_ok : numeric_ok;
  return rep;
}

nlohmann::json CertifyReport::to_json() const {
  nlohmann::json j;
  j["status"] = passed ? "pass" : "fail";
  j["method"] = method;
  j["symbolic_zero"] = symbolic_zero;
  j["max_residual"] = max_residual;
  j["worst"] = {{"t", worst.t}, {"x", worst.x}, {"component", worst_component}};
  j["evaluated"] = evaluated;
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& p : excluded) ex.push_back({p.t, p.x});
  j["excluded"] = ex;
  return j;
}

std::vector<Sample> sample_grid(double t0, double t1, int nt, double x0, double x1, int nx) {
  std::vector<Sample> out;
  for (int i = 0; i < nt; ++i) {
    double t = nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1);
    for (int j = 0; j < nx; ++j) out.push_back({t, nx == 1 ? x0 : x0 + (x1 - x0) * j / (nx - 1)});
  }
  return out;
}

std::string to_csv(const ExactSolution& sol, const std::vector<Sample>& samples) {
  std::string out = "t,x";
  for (int a = 1; a <= sol.m; ++a) out += ",u_" + std::to_string(a);
  out += '\n';
  char buf[64];
  for (const auto& p : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", p.t, p.x);
    out += buf;
    bool guarded = sol.near_singular(p.t, p.x);
    Eigen::VectorXd u = guarded ? Eigen::VectorXd() : sol.evaluate(p.t, p.x);
    for (int a = 0; a < sol.m; ++a) {
      if (guarded) {
        out += ",nan";
      } else {
        std::snprintf(buf, sizeof buf, ",%.17g", u(a));
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace burgers::hopfcole
