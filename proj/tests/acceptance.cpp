// Acceptance suite: one PASS/FAIL line per criterion. Runs from the source
// directory (golden files) and drives the CLI binary for the determinism run.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "burgers/fdsolve.hpp"
#include "burgers/hierarchy.hpp"
#include "burgers/hopfcole.hpp"
#include "burgers/liealg.hpp"
#include "burgers/prolong.hpp"
#include "burgers/symcore/substitute.hpp"
#include "golden.hpp"

#ifndef BURGERS_CLI_PATH
#error "BURGERS_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using namespace burgers;
using symcore::Expr;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): " << o.detail.str() << "["
            << secs << " s]" << std::endl;
}

hopfcole::HeatSolution wave() {
  using namespace hopfcole;
  return heat_sum({{Rational(1), heat_constant(Rational(1))}, {Rational(1), heat_exponential(Rational(1), -1)}});
}

std::vector<hopfcole::HeatSolution> heat_polys(int m) {
  std::vector<hopfcole::HeatSolution> v;
  for (int n = 1; n <= m; ++n) v.push_back(hopfcole::heat_polynomial(n));
  return v;
}

fdsolve::Grid1D make_grid(double x0, double x1, int nx, double dt, double t_end) {
  fdsolve::Grid1D g;
  g.x_min = x0;
  g.x_max = x1;
  g.nx = nx;
  g.dt = dt;
  g.t_end = t_end;
  return g;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(BURGERS_CLI_PATH) + " --out-dir " + out.string() + " " + args + " > " +
                    (out / "stdout.log").string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

int main() {
  criterion(1, "symbolic theorem reproduction", [](Outcome& o) {
    double total_ms = 0;
    for (int m = 1; m <= 6; ++m) {
      auto rep = prolong::verify_theorem(m);
      total_ms += rep.wall_time_ms;
      o.require(rep.passed, "m=" + std::to_string(m) + ": " + rep.failure);

      auto g = golden::load("qcond_m" + std::to_string(m) + ".txt");
      auto f = hierarchy::build_symmetry_field(m);
      symcore::SubstitutionMap kappa;
      if (g.has("kappa")) kappa.set_param("k", symcore::parse(g.raw.at("kappa")));
      o.require(f.tau == Expr(1), "tau != 1");
      o.require(f.xi == kappa.apply(g.expr("xi")), "xi differs from golden, m=" + std::to_string(m));
      for (int a = 1; a <= m; ++a)
        o.require(f.etas[a - 1] == kappa.apply(g.expr("eta" + std::to_string(a))),
                  "eta" + std::to_string(a) + " differs from golden, m=" + std::to_string(m));
      auto next = hierarchy::build_delta(m + 2, hierarchy::tier_of(m) + 1);
      for (int j = 1; j <= m + 2; ++j)
        o.require(next.residuals[j - 1] == g.expr("delta" + std::to_string(j)),
                  "next system equation " + std::to_string(j) + " differs, m=" + std::to_string(m));
    }
    o.require(total_ms < 60000, "runtime over 60 s");
    o.detail << "m=1..6 final residual 0, fields and next systems match golden, " << total_ms << " ms; ";
  });

  criterion(2, "kappa constraints", [](Outcome& o) {
    for (int m = 1; m <= 3; ++m) {
      auto r = prolong::verify_kappa_constraint(m);
      o.require(r.divisible, "m=" + std::to_string(m) + " constraint " + r.constraint.str("kappa"));
      o.detail << "m=" << m << ": " << r.constraint.str("kappa") << " | " << r.expected << "; ";
    }
  });

  criterion(3, "determining-polynomial fidelity", [](Outcome& o) {
    for (int m = 1; m <= 2; ++m) {
      auto g = golden::load("determining_m" + std::to_string(m) + ".txt");
      auto polys = prolong::determining_polynomials(m, prolong::generic_ansatz(m));
      for (int a = 1; a <= m; ++a)
        o.require(polys[a - 1] == g.expr("eq" + std::to_string(a)),
                  "m=" + std::to_string(m) + " equation " + std::to_string(a));
      o.detail << "m=" << m << " matches; ";
    }
  });

  criterion(4, "matrix form", [](Outcome& o) {
    for (int m = 1; m <= 6; ++m) {
      auto mb = hierarchy::matrix_burgers_residual(m);
      auto delta = hierarchy::build_delta(m);
      for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < m; ++j) o.require(mb.residual(i, j).is_zero(), "row " + std::to_string(i + 1) + " nonzero");
      for (int j = 0; j < m; ++j)
        o.require(mb.residual(m - 1, j) == delta.residuals[mb.permutation[j] - 1],
                  "last row column " + std::to_string(j + 1) + ", m=" + std::to_string(m));
    }
    o.detail << "m=1..6; ";
  });

  criterion(5, "Hopf-Cole certification", [](Outcome& o) {
    auto tanh_v = hopfcole::heat_from_json({{"kind", "expression"}, {"parameters", {{"text", "exp(t)*cosh(x)"}}}});
    for (const auto& [name, m, v] : std::vector<std::tuple<std::string, int, std::vector<hopfcole::HeatSolution>>>{
             {"traveling wave", 1, {wave()}}, {"tanh", 1, {tanh_v}}, {"rational m=2", 2, heat_polys(2)}}) {
      auto sol = hopfcole::solve_exact(m, v);
      auto sym = hopfcole::certify_symbolic(sol);
      o.require(sym.has_value() && *sym, name + " symbolic residual not zero");
      o.detail << name << " symbolic 0; ";
    }
    for (int m = 3; m <= 4; ++m) {
      auto sol = hopfcole::solve_exact(m, heat_polys(m));
      auto rep = hopfcole::certify(sol, hopfcole::sample_grid(0.05, 1, 10, 4, 6, 10));
      o.require(rep.evaluated == 100, "excluded points for m=" + std::to_string(m));
      o.require(rep.max_residual < 1e-10, "m=" + std::to_string(m) + " residual " + std::to_string(rep.max_residual));
      o.detail << "m=" << m << " max residual " << rep.max_residual << " at " << rep.evaluated << " points; ";
    }
  });

  criterion(6, "Hopf-Cole gauge invariance", [](Outcome& o) {
    using hopfcole::heat_sum;
    auto pts = hopfcole::sample_grid(0.1, 0.8, 5, 0.7, 2.7, 10);
    for (int m = 2; m <= 3; ++m) {
      auto v = heat_polys(m);
      auto base = hopfcole::solve_exact(m, v);
      std::vector<hopfcole::HeatSolution> scaled, mixed;
      for (int i = 0; i < m; ++i) {
        scaled.push_back(heat_sum({{Rational(i + 2, 3) * Rational(i % 2 ? -1 : 1), v[i]}}));
        // Unit upper-triangular plus a corner entry: invertible for these sizes.
        std::vector<std::pair<Rational, hopfcole::HeatSolution>> parts{{Rational(1), v[i]}};
        if (i + 1 < m) parts.emplace_back(Rational(2, i + 1), v[i + 1]);
        else parts.emplace_back(Rational(1, 3), v[0]);
        mixed.push_back(heat_sum(parts));
      }
      double worst = 0;
      int used = 0;
      for (const auto& variant : {hopfcole::solve_exact(m, scaled), hopfcole::solve_exact(m, mixed)}) {
        for (const auto& p : pts) {
          if (base.near_singular(p.t, p.x)) continue;
          ++used;
          worst = std::max(worst, (base.evaluate(p.t, p.x) - variant.evaluate(p.t, p.x)).cwiseAbs().maxCoeff());
        }
      }
      o.require(worst < 1e-12, "m=" + std::to_string(m) + " difference " + std::to_string(worst));
      o.detail << "m=" << m << " max difference " << worst << " over " << used << " evaluations; ";
    }
  });

  criterion(7, "solver validation", [](Outcome& o) {
    auto w = hopfcole::solve_exact(1, {wave()});
    fdsolve::ExactFn wf = [&](double t, double x) { return w.evaluate(t, x); };
    auto g = make_grid(-10, 10, 400, 1e-4, 0.5);
    auto traj = fdsolve::solve_ivp(fdsolve::sample(wf, 1, g, 0), g, {0.5}, wf);
    auto err = fdsolve::error_vs_exact(traj.snapshots.back(), g, wf);
    o.require(err.linf < 1e-3, "m=1 Linf " + std::to_string(err.linf));
    o.detail << "m=1 Linf " << err.linf << "; ";
    auto r1 = fdsolve::convergence_study(1, wf, make_grid(-10, 10, 100, 1e-2, 0.5), {100, 200, 400});
    o.require(r1.observed_order() >= 1.8 && r1.observed_order() <= 2.2, "m=1 order");
    o.detail << "m=1 order " << r1.observed_order() << "; ";
    auto r = hopfcole::solve_exact(2, heat_polys(2));
    fdsolve::ExactFn rf = [&](double t, double x) { return r.evaluate(t, x); };
    auto r2 = fdsolve::convergence_study(2, rf, make_grid(2, 4, 100, 1e-3, 0.5), {100, 200, 400});
    o.require(r2.observed_order() >= 1.8 && r2.observed_order() <= 2.2, "m=2 order");
    o.detail << "m=2 order " << r2.observed_order() << " on x in [2,4]; ";
  });

  criterion(8, "Lie algebra", [](Outcome& o) {
    auto base = liealg::structure_constants(1);
    for (int m = 1; m <= 8; ++m) {
      auto sc = liealg::structure_constants(m);
      o.require(sc == base, "table differs at m=" + std::to_string(m));
      o.require(sc.antisymmetric(), "not antisymmetric at m=" + std::to_string(m));
      o.require(sc.jacobi_violations().empty(), "Jacobi fails at m=" + std::to_string(m));
      auto cl = prolong::verify_classical(m, liealg::generators(m));
      o.require(cl.passed, "classical invariance fails at m=" + std::to_string(m));
    }
    o.detail << "m=1..8 closed, identical, Jacobi exact, generators invariant; ";
  });

  criterion(9, "determinism", [](Outcome& o) {
    const fs::path root = fs::temp_directory_path() / ("burgers_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::vector<std::string> suite = {
        "gen --m 3 --format json --out gen_m3.json",
        "verify theorem --m 1..6",
        "verify kappa --m 1..3",
        "verify liealg --m 1..8",
        "verify classical --m 1..8",
        "exact --m 1 --certify",
        "exact --m 2 --certify",
        "exact --m 4 --certify",
        "solve --m 1 --exact-boundary --nx 200 --dt 1e-3",
        "convergence --m 1 --ladder 100,200,400",
        "convergence --m 2 --ladder 100,200,400",
        "report",
    };
    for (const char* run : {"a", "b"}) {
      const fs::path dir = root / run;
      fs::create_directories(dir);
      for (const auto& cmd : suite) {
        std::string args = cmd;
        if (auto pos = args.find("--out gen_m3.json"); pos != std::string::npos)
          args.replace(pos, 17, "--out " + (dir / "gen_m3.json").string());
        int rc = run_cli(args, dir);
        o.require(rc == 0, std::string("'") + cmd + "' exited " + std::to_string(rc));
      }
    }
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
      const auto name = e.path().filename().string();
      if (name.find(".meta.") != std::string::npos || name == "stdout.log") continue;
      fs::path other = root / "b" / name;
      o.require(fs::exists(other), name + " missing in second run");
      o.require(slurp(e.path()) == slurp(other), name + " differs between runs");
      ++compared;
    }
    o.require(compared > 20, "too few artifacts");
    o.detail << compared << " data artifacts byte-identical; ";
    if (o.pass) fs::remove_all(root);
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
