#include "burgers/fdsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace burgers::fdsolve {

namespace {

// Solves the constant-coefficient tridiagonal system
// lo*y[i-1] + diag*y[i] + up*y[i+1] = d[i] in place.
void thomas(double lo, double diag, double up, Eigen::Ref<Eigen::ArrayXd> d) {
  const Eigen::Index n = d.size();
  Eigen::ArrayXd c(n);
  double beta = diag;
  c(0) = up / beta;
  d(0) /= beta;
  for (Eigen::Index i = 1; i < n; ++i) {
    beta = diag - lo * c(i - 1);
    c(i) = up / beta;
    d(i) = (d(i) - lo * d(i - 1)) / beta;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) d(i) -= c(i) * d(i + 1);
}

// Cyclic variant: the corners carry lo (top right) and up (bottom left).
void thomas_periodic(double lo, double diag, double up, Eigen::ArrayXd& d) {
  const Eigen::Index n = d.size();
  // Sherman-Morrison with A = T + w z^T, w = (gamma, 0, ..., up),
  // z = (1, 0, ..., lo/gamma).
  const double gamma = -diag;
  const double first = diag - gamma;
  const double last = diag - up * lo / gamma;
  auto solve_t = [&](Eigen::ArrayXd rhs) {
    Eigen::ArrayXd c(n);
    double beta = first;
    c(0) = up / beta;
    rhs(0) /= beta;
    for (Eigen::Index i = 1; i < n; ++i) {
      beta = (i == n - 1 ? last : diag) - lo * c(i - 1);
      c(i) = up / beta;
      rhs(i) = (rhs(i) - lo * rhs(i - 1)) / beta;
    }
    for (Eigen::Index i = n - 2; i >= 0; --i) rhs(i) -= c(i) * rhs(i + 1);
    return rhs;
  };
  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(n);
  w(0) = gamma;
  w(n - 1) = up;
  Eigen::ArrayXd y = solve_t(d);
  Eigen::ArrayXd q = solve_t(w);
  const double zy = y(0) + lo / gamma * y(n - 1);
  const double zq = q(0) + lo / gamma * q(n - 1);
  d = y - q * (zy / (1 + zq));
}

// Central first and second differences; periodic wraps, Dirichlet leaves the
// end points at zero.
Eigen::ArrayXd d1(const Eigen::ArrayXd& u, double dx, bool periodic) {
  const Eigen::Index n = u.size();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  out.segment(1, n - 2) = (u.tail(n - 2) - u.head(n - 2)) / (2 * dx);
  if (periodic) {
    out(0) = (u(1) - u(n - 1)) / (2 * dx);
    out(n - 1) = (u(0) - u(n - 2)) / (2 * dx);
  }
  return out;
}

Eigen::ArrayXd d2(const Eigen::ArrayXd& u, double dx, bool periodic) {
  const Eigen::Index n = u.size();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  out.segment(1, n - 2) = (u.tail(n - 2) - 2 * u.segment(1, n - 2) + u.head(n - 2)) / (dx * dx);
  if (periodic) {
    out(0) = (u(1) - 2 * u(0) + u(n - 1)) / (dx * dx);
    out(n - 1) = (u(0) - 2 * u(n - 1) + u(n - 2)) / (dx * dx);
  }
  return out;
}

// Explicit coupling terms -u_a u_1,x - u_{a+1},x.
std::vector<Eigen::ArrayXd> coupling(const GridField& s, double dx, bool periodic) {
  const int m = s.m();
  std::vector<Eigen::ArrayXd> out(m);
  Eigen::ArrayXd u1x = d1(s.u[0], dx, periodic);
  for (int a = 0; a < m; ++a) {
    out[a] = -s.u[a] * u1x;
    if (a + 1 < m) out[a] -= d1(s.u[a + 1], dx, periodic);
  }
  return out;
}

void check_finite(const GridField& s) {
  for (int a = 0; a < s.m(); ++a)
    if (!s.u[a].allFinite())
      throw SolverBlowup("non-finite value in u_" + std::to_string(a + 1) + " at t = " + std::to_string(s.t));
}

void check_shape(const GridField& s, const Grid1D& g) {
  if (s.u.empty()) throw GridError("state has no components");
  for (const auto& a : s.u)
    if (a.size() != g.nx) throw GridError("state length does not match nx");
}

}  // namespace

double Grid1D::dx() const {
  return (x_max - x_min) / (boundary == Boundary::Periodic ? nx : nx - 1);
}

double Grid1D::x(int i) const { return x_min + i * dx(); }

Eigen::ArrayXd Grid1D::xs() const {
  Eigen::ArrayXd out(nx);
  for (int i = 0; i < nx; ++i) out(i) = x(i);
  return out;
}

void Grid1D::validate() const {
  if (nx < 8) throw GridError("nx must be at least 8");
  if (!(x_max > x_min)) throw GridError("x_max must exceed x_min");
  if (!(dt > 0)) throw GridError("dt must be positive");
  if (!(t_end >= 0)) throw GridError("t_end must be nonnegative");
  if (!(c_adv > 0)) throw GridError("c_adv must be positive");
}

GridField sample(const ExactFn& exact, int m, const Grid1D& grid, double t) {
  GridField s;
  s.t = t;
  s.u.assign(m, Eigen::ArrayXd(grid.nx));
  for (int i = 0; i < grid.nx; ++i) {
    Eigen::VectorXd v = exact(t, grid.x(i));
    for (int a = 0; a < m; ++a) s.u[a](i) = v(a);
  }
  return s;
}

std::vector<Eigen::ArrayXd> semi_discrete_rhs(const GridField& state, const Grid1D& grid) {
  check_shape(state, grid);
  const bool periodic = grid.boundary == Boundary::Periodic;
  auto out = coupling(state, grid.dx(), periodic);
  for (int a = 0; a < state.m(); ++a) out[a] += d2(state.u[a], grid.dx(), periodic);
  return out;
}

GridField step(const GridField& state, const Grid1D& grid, double dt, const ExactFn& boundary) {
  check_shape(state, grid);
  const bool periodic = grid.boundary == Boundary::Periodic;
  if (!periodic && !boundary) throw GridError("Dirichlet step needs boundary data");
  const double dx = grid.dx();
  const double r = dt / (dx * dx);
  const int m = state.m();
  const Eigen::Index n = grid.nx;

  auto explicit_part = coupling(state, dx, periodic);
  GridField next;
  next.t = state.t + dt;
  next.u.resize(m);

  Eigen::VectorXd left_new, right_new;
  if (!periodic) {
    left_new = boundary(next.t, grid.x(0));
    right_new = boundary(next.t, grid.x(grid.nx - 1));
  }

  for (int a = 0; a < m; ++a) {
    const Eigen::ArrayXd& u = state.u[a];
    Eigen::ArrayXd rhs = u + 0.5 * dt * d2(u, dx, periodic) + dt * explicit_part[a];
    if (periodic) {
      thomas_periodic(-0.5 * r, 1 + r, -0.5 * r, rhs);
      next.u[a] = rhs;
    } else {
      // Old boundary values already entered through d2 at the first and last
      // interior points; the new ones move to the right-hand side.
      Eigen::ArrayXd inner = rhs.segment(1, n - 2);
      inner(0) += 0.5 * r * left_new(a);
      inner(n - 3) += 0.5 * r * right_new(a);
      thomas(-0.5 * r, 1 + r, -0.5 * r, inner);
      next.u[a].resize(n);
      next.u[a](0) = left_new(a);
      next.u[a](n - 1) = right_new(a);
      next.u[a].segment(1, n - 2) = inner;
    }
  }
  check_finite(next);
  return next;
}

Trajectory solve_ivp(const GridField& initial, const Grid1D& grid, const std::vector<double>& times,
                     const ExactFn& boundary) {
  grid.validate();
  check_shape(initial, grid);
  check_finite(initial);
  std::vector<double> targets = times;
  std::sort(targets.begin(), targets.end());
  Trajectory traj;
  GridField cur = initial;
  const double dx = grid.dx();
  for (double target : targets) {
    if (target < cur.t - 1e-12 || target > grid.t_end + 1e-12)
      throw GridError("snapshot time " + std::to_string(target) + " outside [t0, t_end]");
    while (cur.t < target) {
      double dt = grid.dt;
      const double umax = cur.u[0].abs().maxCoeff();
      if (umax > 0) dt = std::min(dt, grid.c_adv * dx / umax);
      if (dt < grid.dt_min)
        throw CflFailure("advective step limit " + std::to_string(dt) + " below minimum at t = " + std::to_string(cur.t));
      // Land exactly on the snapshot; absorb a sliver rather than take it as
      // a separate tiny step.
      bool last = cur.t + dt >= target - 1e-9 * dt;
      if (last) dt = target - cur.t;
      cur = step(cur, grid, dt, boundary);
      if (last) cur.t = target;
      ++traj.steps;
    }
    traj.snapshots.push_back(cur);
  }
  return traj;
}

ErrorNorms error_vs_exact(const GridField& state, const Grid1D& grid, const ExactFn& exact) {
  GridField ref = sample(exact, state.m(), grid, state.t);
  double sq = 0;
  ErrorNorms e;
  for (int a = 0; a < state.m(); ++a) {
    Eigen::ArrayXd d = (state.u[a] - ref.u[a]).abs();
    sq += d.square().sum();
    e.linf = std::max(e.linf, d.maxCoeff());
  }
  e.l2 = std::sqrt(grid.dx() * sq);
  return e;
}

double ConvergenceReport::observed_order() const { return levels.size() < 2 ? 0 : levels.back().order_l2; }

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels)
    lv.push_back({{"nx", l.nx}, {"dt", l.dt}, {"L2", l.error.l2}, {"Linf", l.error.linf}, {"order", l.order_l2},
                  {"order_linf", l.order_linf}});
  j["levels"] = lv;
  j["observed_order"] = observed_order();
  j["non_monotone"] = non_monotone;
  return j;
}

ConvergenceReport convergence_study(int m, const ExactFn& exact, Grid1D grid, const std::vector<int>& ladder,
                                    double t0) {
  if (ladder.size() < 3) throw GridError("convergence ladder needs at least three levels");
  ConvergenceReport rep;
  rep.m = m;
  grid.boundary = Boundary::Dirichlet;
  const double dt0 = grid.dt;
  grid.nx = ladder.front();
  const double dx0 = grid.dx();
  for (int nx : ladder) {
    grid.nx = nx;
    grid.dt = dt0 * std::pow(grid.dx() / dx0, 2);
    GridField init = sample(exact, m, grid, t0);
    auto traj = solve_ivp(init, grid, {grid.t_end}, exact);
    ConvergenceLevel lvl;
    lvl.nx = nx;
    lvl.dt = grid.dt;
    lvl.error = error_vs_exact(traj.snapshots.back(), grid, exact);
    if (!rep.levels.empty()) {
      const auto& prev = rep.levels.back();
      Grid1D pg = grid;
      pg.nx = prev.nx;
      const double ratio = std::log(pg.dx() / grid.dx());
      lvl.order_l2 = std::log(prev.error.l2 / lvl.error.l2) / ratio;
      lvl.order_linf = std::log(prev.error.linf / lvl.error.linf) / ratio;
      if (!(lvl.error.l2 < prev.error.l2)) ++rep.non_monotone;
    }
    rep.levels.push_back(lvl);
  }
  return rep;
}

std::string to_csv(const Trajectory& traj, const Grid1D& grid) {
  std::string out = "t,x";
  const int m = traj.snapshots.empty() ? 0 : traj.snapshots.front().m();
  for (int a = 1; a <= m; ++a) out += ",u_" + std::to_string(a);
  out += '\n';
  char buf[64];
  for (const auto& s : traj.snapshots) {
    for (int i = 0; i < grid.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", s.t, grid.x(i));
      out += buf;
      for (int a = 0; a < m; ++a) {
        std::snprintf(buf, sizeof buf, ",%.17g", s.u[a](i));
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace burgers::fdsolve
