#pragma once

// Finite-difference solver for the m-component system on a 1-D grid.
// Diffusion is Crank-Nicolson, the coupling terms u_a u_1,x and u_{a+1},x
// are explicit with central differences from the previous time level.

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace burgers::fdsolve {

enum class Boundary { Dirichlet, Periodic };

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values appeared.
class SolverBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The advective step limit shrank below the minimum step.
class CflFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dirichlet grids include both end points (dx = L/(nx-1)); periodic grids
/// omit x_max (dx = L/nx).
struct Grid1D {
  double x_min = -10;
  double x_max = 10;
  int nx = 400;
  double dt = 1e-4;
  double t_end = 0.5;
  Boundary boundary = Boundary::Dirichlet;
  /// dt is cut to c_adv dx / max|u_1| when that is smaller.
  double c_adv = 0.5;
  /// Steps shorter than this after adaptation are a CFL failure.
  double dt_min = 1e-10;

  double dx() const;
  double x(int i) const;
  Eigen::ArrayXd xs() const;
  void validate() const;
};

/// m arrays of length nx at time t.
struct GridField {
  double t = 0;
  std::vector<Eigen::ArrayXd> u;

  int m() const { return static_cast<int>(u.size()); }
};

/// Values u_1..u_m at (t, x); feeds Dirichlet boundaries and exact comparisons.
using ExactFn = std::function<Eigen::VectorXd(double t, double x)>;

GridField sample(const ExactFn& exact, int m, const Grid1D& grid, double t);

/// Spatial operator u_xx - u_a u_1,x - u_{a+1},x at every grid point.
/// Dirichlet end points are left at zero.
std::vector<Eigen::ArrayXd> semi_discrete_rhs(const GridField& state, const Grid1D& grid);

/// One step of length dt. `boundary` is required for Dirichlet grids.
GridField step(const GridField& state, const Grid1D& grid, double dt, const ExactFn& boundary = {});

struct Trajectory {
  std::vector<GridField> snapshots;
  long steps = 0;
};

/// Integrates to each requested time in turn (sorted, within [t0, t_end]);
/// the last substep before a snapshot is shortened to land on it exactly.
Trajectory solve_ivp(const GridField& initial, const Grid1D& grid, const std::vector<double>& times,
                     const ExactFn& boundary = {});

struct ErrorNorms {
  double l2 = 0;
  double linf = 0;
};

/// Discrete L2 (sqrt(dx * sum e^2) over all components) and max norm.
ErrorNorms error_vs_exact(const GridField& state, const Grid1D& grid, const ExactFn& exact);

struct ConvergenceLevel {
  int nx = 0;
  double dt = 0;
  ErrorNorms error;
  /// Order against the previous level; 0 on the first level.
  double order_l2 = 0;
  double order_linf = 0;
};

struct ConvergenceReport {
  int m = 0;
  std::vector<ConvergenceLevel> levels;
  /// Pairs where the error did not decrease.
  int non_monotone = 0;

  /// Order of the finest pair in L2.
  double observed_order() const;
  nlohmann::json to_json() const;
};

/// Runs the ladder with Dirichlet data from `exact`, starting at exact(t0)
/// and comparing at grid.t_end. dt = dt_coarse * (dx / dx_coarse)^2.
ConvergenceReport convergence_study(int m, const ExactFn& exact, Grid1D grid, const std::vector<int>& ladder,
                                    double t0 = 0);

/// CSV t,x,u_1..u_m for each snapshot.
std::string to_csv(const Trajectory& traj, const Grid1D& grid);

}  // namespace burgers::fdsolve
