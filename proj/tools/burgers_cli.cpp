// Command-line front end: generation, batch verification, exact solutions,
// numerical solves and reporting. Exit codes: 0 success, 2 verification
// failure, 3 numerical failure, 4 configuration error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "burgers/fdsolve.hpp"
#include "burgers/hierarchy.hpp"
#include "burgers/hopfcole.hpp"
#include "burgers/liealg.hpp"
#include "burgers/prolong.hpp"
#include "burgers/symcore/eval.hpp"
#include "burgers/symcore/parse.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace burgers;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFail = 2, kNumericFail = 3, kConfigError = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultMaxM = 12;

struct Common {
  std::string out_dir;
  std::string format = "text";
  bool allow_large_m = false;
  unsigned jobs = 0;
};

std::vector<int> parse_m_range(const std::string& text, bool allow_large) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ConfigError("bad m value '" + s + "'");
    return v;
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (a > b) throw ConfigError("empty m range " + text);
    for (int m = a; m <= b; ++m) out.push_back(m);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  }
  if (out.empty()) throw ConfigError("no m given");
  for (int m : out) {
    if (m < 1) throw ConfigError("m must be at least 1");
    if (m > kDefaultMaxM && !allow_large)
      throw ConfigError("m = " + std::to_string(m) + " exceeds the default cap of " + std::to_string(kDefaultMaxM) +
                        "; pass --allow-large-m");
  }
  return out;
}

std::string out_dir(const Common& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("BURGERS_OUT_DIR"); env && *env) return env;
  return "out";
}

// Write to a sibling temporary and rename, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << data;
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path& path, const json& j) { write_atomic(path, j.dump(2) + "\n"); }

// Runs f(m) for every m, up to `jobs` at a time; results come back in input
// order so output does not depend on scheduling.
template <class F>
auto run_parallel(const std::vector<int>& ms, unsigned jobs, F f) {
  using R = decltype(f(0));
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::future<R>> futures;
  std::vector<R> results;
  std::size_t next = 0;
  while (next < ms.size() || !futures.empty()) {
    while (next < ms.size() && futures.size() < jobs) {
      int m = ms[next++];
      futures.push_back(std::async(std::launch::async, f, m));
    }
    results.push_back(futures.front().get());
    futures.erase(futures.begin());
  }
  return results;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(int m, const Common& c, const std::string& out_file) {
  auto delta = hierarchy::build_delta(m);
  auto omega = hierarchy::build_companion(m);
  auto field = hierarchy::build_symmetry_field(m);
  std::string text;
  if (c.format == "json") {
    json om = json::array();
    for (int i = 0; i < m; ++i) {
      json row = json::array();
      for (int j = 0; j < m; ++j) row.push_back(symcore::to_string(omega(i, j)));
      om.push_back(row);
    }
    json j = {{"m", m}, {"system", hierarchy::to_json(delta)}, {"companion", om}, {"field", hierarchy::to_json(field)}};
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "m = " << m << ", tier " << delta.tier << "\n\nsystem:\n";
    for (const auto& r : delta.residuals) os << "  " << r << " = 0\n";
    os << "\ncompanion matrix:\n";
    for (int i = 0; i < m; ++i) {
      os << "  [";
      for (int j = 0; j < m; ++j) os << (j ? ", " : "") << omega(i, j);
      os << "]\n";
    }
    os << "\nconditional symmetry field:\n  tau = " << field.tau << "\n  xi = " << field.xi << "\n";
    for (int a = 1; a <= m; ++a) os << "  eta" << a << " = " << field.etas[a - 1] << "\n";
    text = os.str();
  }
  if (out_file.empty())
    std::cout << text;
  else
    write_atomic(out_file, text);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOutcome {
  int m = 0;
  bool passed = false;
  json data;
  double wall_ms = 0;
  std::string summary;
};

int cmd_verify(const std::string& kind, const std::vector<int>& ms, const Common& c) {
  const fs::path dir = out_dir(c);
  auto run_one = [&](int m) -> VerifyOutcome {
    auto start = std::chrono::steady_clock::now();
    VerifyOutcome o;
    o.m = m;
    if (kind == "theorem") {
      auto rep = prolong::verify_theorem(m);
      o.passed = rep.passed;
      o.data = rep.to_json(false);
      o.summary = rep.passed ? "final residual 0" : rep.failure;
    } else if (kind == "classical") {
      auto rep = prolong::verify_classical(m, liealg::generators(m));
      o.passed = rep.passed;
      o.data = rep.to_json(false);
      o.summary = rep.passed ? "5 generators invariant" : rep.failures.front();
    } else if (kind == "kappa") {
      auto rep = prolong::verify_kappa_constraint(m);
      o.passed = rep.divisible;
      o.data = rep.to_json();
      o.summary = rep.constraint.str("kappa") + (rep.divisible ? " divisible by " : " NOT divisible by ") + rep.expected;
    } else {
      try {
        auto sc = liealg::structure_constants(m);
        auto jac = sc.jacobi_violations();
        o.passed = sc.antisymmetric() && jac.empty();
        o.data = {{"m", m}, {"status", o.passed ? "pass" : "fail"}, {"brackets", sc.to_json()}, {"jacobi_violations", jac}};
        o.summary = o.passed ? "closed, Jacobi exact" : "structure constants defective";
      } catch (const liealg::NonClosureError& e) {
        o.data = {{"m", m}, {"status", "fail"}, {"failure", e.what()}};
        o.summary = e.what();
      }
    }
    write_json(dir / ("verify_" + kind + "_m" + std::to_string(m) + ".json"), o.data);
    o.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return o;
  };
  auto results = run_parallel(ms, c.jobs, run_one);

  bool all = true;
  json meta = json::object();
  json summary = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    meta["m" + std::to_string(r.m)] = {{"wall_time_ms", r.wall_ms}};
    summary.push_back({{"m", r.m}, {"status", r.passed ? "pass" : "fail"}, {"summary", r.summary}});
  }
  if (kind == "liealg" && results.size() > 1) {
    bool identical = true;
    for (const auto& r : results)
      if (!r.data.contains("brackets") || r.data["brackets"] != results.front().data["brackets"]) identical = false;
    all = all && identical;
    write_json(dir / "verify_liealg_summary.json", {{"identical_tables", identical}, {"m", ms}});
    if (c.format != "json") std::cout << "structure constants identical across m: " << (identical ? "yes" : "NO") << "\n";
  }
  // Timings live in a separate metadata file so data files stay reproducible.
  write_json(dir / ("verify_" + kind + ".meta.json"), meta);
  if (c.format == "json") {
    std::cout << json({{"kind", kind}, {"status", all ? "pass" : "fail"}, {"results", summary}}).dump(2) << "\n";
  } else {
    for (const auto& r : results)
      std::cout << kind << " m=" << r.m << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.summary << ")\n";
    std::cout << (all ? "all passed" : "failures present") << "\n";
  }
  return all ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------------------
// shared by exact / solve / convergence

struct ProblemOptions {
  int m = 1;
  std::string catalog;
  double x_min = NAN, x_max = NAN;
  double t0 = 0;
  double t_end = 0.5;
};

std::vector<hopfcole::HeatSolution> load_catalog(const ProblemOptions& p) {
  if (p.catalog.empty()) {
    if (p.m == 1)
      return {hopfcole::heat_sum({{Rational(1), hopfcole::heat_constant(Rational(1))},
                                  {Rational(1), hopfcole::heat_exponential(Rational(1), -1)}})};
    std::vector<hopfcole::HeatSolution> v;
    for (int n = 1; n <= p.m; ++n) v.push_back(hopfcole::heat_polynomial(n));
    return v;
  }
  std::ifstream f(p.catalog);
  if (!f) throw ConfigError("cannot open catalog " + p.catalog);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("catalog is not valid JSON: ") + e.what());
  }
  auto v = hopfcole::catalog_from_json(j);
  if (static_cast<int>(v.size()) != p.m)
    throw ConfigError("catalog has " + std::to_string(v.size()) + " entries, need m = " + std::to_string(p.m));
  return v;
}

// Defaults keep the default heat-polynomial catalogs clear of their
// determinant zeros, which lie on x^2 = c t with c < 11 for m <= 4.
void default_domain(ProblemOptions& p) {
  if (std::isnan(p.x_min)) p.x_min = p.m == 1 ? -10 : p.m == 2 ? 2 : 4;
  if (std::isnan(p.x_max)) p.x_max = p.m == 1 ? 10 : p.m == 2 ? 4 : 6;
  if (!(p.x_max > p.x_min)) throw ConfigError("x-max must exceed x-min");
  if (!(p.t_end > p.t0)) throw ConfigError("t-end must exceed t0");
}

void add_problem_options(CLI::App* sub, ProblemOptions& p) {
  sub->add_option("--m", p.m, "number of components")->required()->check(CLI::PositiveNumber);
  sub->add_option("--catalog", p.catalog, "JSON heat-solution catalog (default: built-in per m)");
  sub->add_option("--x-min", p.x_min, "left end of the domain");
  sub->add_option("--x-max", p.x_max, "right end of the domain");
  sub->add_option("--t0", p.t0, "start time");
  sub->add_option("--t-end", p.t_end, "final time");
}

fdsolve::ExactFn exact_fn(const hopfcole::ExactSolution& s) {
  return [&s](double t, double x) { return s.evaluate(t, x); };
}

// ---------------------------------------------------------------------------
// exact

int cmd_exact(ProblemOptions p, const Common& c, bool do_certify, double tol, int samples_t, int samples_x) {
  default_domain(p);
  auto v = load_catalog(p);
  auto sol = hopfcole::solve_exact(p.m, v);
  const fs::path dir = out_dir(c);
  const std::string stem = "exact_m" + std::to_string(p.m);
  write_json(dir / (stem + ".json"), sol.to_json());
  auto pts = hopfcole::sample_grid(p.t0, p.t_end, samples_t, p.x_min, p.x_max, samples_x);
  write_atomic(dir / (stem + ".csv"), hopfcole::to_csv(sol, pts));
  std::cout << "exact m=" << p.m << ": det = " << symcore::to_string(sol.det) << "\n";
  if (!do_certify) return kOk;
  hopfcole::CertifyOptions opt;
  opt.tol = tol;
  auto rep = hopfcole::certify(sol, pts, opt);
  write_json(dir / (stem + "_certify.json"), rep.to_json());
  std::cout << "certify (" << rep.method << "): max residual " << rep.max_residual << " over " << rep.evaluated
            << " points, " << rep.excluded.size() << " excluded: " << (rep.passed ? "PASS" : "FAIL") << "\n";
  return rep.passed ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  int nx = 400;
  double dt = 1e-4;
  bool exact_boundary = false;
  bool periodic = false;
  std::vector<std::string> init;
  std::string times;
  double c_adv = 0.5;
};

int cmd_solve(ProblemOptions p, const Common& c, const SolveOptions& s) {
  default_domain(p);
  fdsolve::Grid1D grid;
  grid.x_min = p.x_min;
  grid.x_max = p.x_max;
  grid.nx = s.nx;
  grid.dt = s.dt;
  grid.t_end = p.t_end;
  grid.c_adv = s.c_adv;
  grid.boundary = s.periodic ? fdsolve::Boundary::Periodic : fdsolve::Boundary::Dirichlet;
  try {
    grid.validate();
  } catch (const fdsolve::GridError& e) {
    throw ConfigError(e.what());
  }
  std::vector<double> times = s.times.empty() ? std::vector<double>{p.t_end} : parse_doubles(s.times);

  std::optional<hopfcole::ExactSolution> sol;
  fdsolve::GridField init;
  init.t = p.t0;
  if (s.periodic) {
    if (static_cast<int>(s.init.size()) != p.m) throw ConfigError("--periodic needs one --init expression per component");
    for (const auto& text : s.init) {
      symcore::Expr e;
      try {
        e = symcore::parse(text);
      } catch (const symcore::ParseError& err) {
        throw ConfigError(std::string("--init: ") + err.what());
      }
      Eigen::ArrayXd vals(grid.nx);
      for (int i = 0; i < grid.nx; ++i) {
        symcore::Valuation<double> at;
        at.t = p.t0;
        at.x = grid.x(i);
        try {
          vals(i) = symcore::evaluate(e, at);
        } catch (const symcore::EvaluationError& err) {
          throw ConfigError(std::string("--init: ") + err.what());
        }
      }
      init.u.push_back(vals);
    }
  } else {
    sol = hopfcole::solve_exact(p.m, load_catalog(p));
    init = fdsolve::sample(exact_fn(*sol), p.m, grid, p.t0);
  }
  fdsolve::ExactFn bc = sol ? exact_fn(*sol) : fdsolve::ExactFn{};
  auto traj = fdsolve::solve_ivp(init, grid, times, bc);

  const fs::path dir = out_dir(c);
  const std::string stem = "solve_m" + std::to_string(p.m);
  write_atomic(dir / (stem + ".csv"), fdsolve::to_csv(traj, grid));
  json report = {{"m", p.m}, {"nx", grid.nx}, {"dt", grid.dt}, {"steps", traj.steps},
                 {"boundary", s.periodic ? "periodic" : "dirichlet-exact"}};
  if (sol) {
    json table = json::array();
    if (c.format != "json") std::cout << "t\tL2\tLinf\n";
    for (const auto& snap : traj.snapshots) {
      auto e = fdsolve::error_vs_exact(snap, grid, bc);
      table.push_back({{"t", snap.t}, {"L2", e.l2}, {"Linf", e.linf}});
      if (c.format != "json") std::cout << snap.t << "\t" << e.l2 << "\t" << e.linf << "\n";
    }
    report["errors"] = table;
  }
  write_json(dir / (stem + ".json"), report);
  if (c.format == "json") std::cout << report.dump(2) << "\n";
  std::cout << "solve m=" << p.m << ": " << traj.steps << " steps, " << traj.snapshots.size() << " snapshots\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// convergence

int cmd_convergence(ProblemOptions p, const Common& c, const std::string& ladder_text, double dt, double lo, double hi) {
  default_domain(p);
  std::vector<int> ladder;
  for (double d : parse_doubles(ladder_text)) ladder.push_back(static_cast<int>(d));
  if (ladder.size() < 3) throw ConfigError("ladder needs at least three levels");
  auto sol = hopfcole::solve_exact(p.m, load_catalog(p));
  fdsolve::Grid1D grid;
  grid.x_min = p.x_min;
  grid.x_max = p.x_max;
  grid.dt = dt;
  grid.t_end = p.t_end;
  auto rep = fdsolve::convergence_study(p.m, exact_fn(sol), grid, ladder, p.t0);
  const double order = rep.observed_order();
  const bool ok = order >= lo && order <= hi && rep.non_monotone <= 1;
  json j = rep.to_json();
  j["expected_order"] = {lo, hi};
  j["status"] = ok ? "pass" : "fail";
  write_json(fs::path(out_dir(c)) / ("convergence_m" + std::to_string(p.m) + ".json"), j);
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "nx\tdt\tL2\tLinf\torder\n";
    for (const auto& l : rep.levels)
      std::cout << l.nx << "\t" << l.dt << "\t" << l.error.l2 << "\t" << l.error.linf << "\t" << l.order_l2 << "\n";
    std::cout << "observed order " << order << ": " << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kVerifyFail;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const Common& c) {
  const fs::path dir = out_dir(c);
  if (!fs::is_directory(dir)) throw ConfigError("no output directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() == ".json" && name.find(".meta.") == std::string::npos && name != "report.json")
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  json entries = json::array();
  int failed = 0;
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception&) {
      continue;
    }
    if (!j.is_object() || !j.contains("status")) continue;
    std::string status = j["status"];
    if (status != "pass") ++failed;
    entries.push_back({{"file", f.filename().string()}, {"status", status}});
  }
  json rep = {{"artifacts", entries}, {"failed", failed}, {"total", entries.size()}};
  write_json(dir / "report.json", rep);
  if (c.format == "json") {
    std::cout << rep.dump(2) << "\n";
  } else {
    for (const auto& e : entries)
      std::printf("%-40s %s\n", e["file"].get<std::string>().c_str(), e["status"].get<std::string>().c_str());
    std::printf("%zu artifacts, %d failed\n", entries.size(), failed);
  }
  return failed == 0 ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled Burgers hierarchy: symbolic verification, exact solutions and numerics"};
  app.require_subcommand(1);
  // Subcommands inherit this, so global options may follow the subcommand.
  app.fallthrough();
  Common common;
  app.add_option("--out-dir", common.out_dir, "output directory (default $BURGERS_OUT_DIR or ./out)");
  app.add_option("--format", common.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--allow-large-m", common.allow_large_m, "lift the m <= 12 cap");
  app.add_option("--jobs", common.jobs, "parallel m instances (default: hardware threads)");

  int gen_m = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "print the system, companion matrix and symmetry field");
  gen->add_option("--m", gen_m, "number of components")->required();
  gen->add_option("--out", gen_out, "write to a file instead of stdout");

  std::string verify_kind, verify_m = "1..6";
  auto* verify = app.add_subcommand("verify", "run symbolic verifications over a range of m");
  verify->add_option("kind", verify_kind, "theorem | classical | liealg | kappa")
      ->required()
      ->check(CLI::IsMember({"theorem", "classical", "liealg", "kappa"}));
  verify->add_option("--m", verify_m, "m, a..b or a,b,c");

  ProblemOptions exact_p;
  bool certify = false;
  double tol = 1e-10;
  int samples_t = 10, samples_x = 10;
  auto* exact = app.add_subcommand("exact", "build an exact solution from heat solutions");
  add_problem_options(exact, exact_p);
  exact->add_flag("--certify", certify, "certify by residual substitution");
  exact->add_option("--tol", tol, "certification tolerance")->check(CLI::PositiveNumber);
  exact->add_option("--samples-t", samples_t, "sample rows in t")->check(CLI::PositiveNumber);
  exact->add_option("--samples-x", samples_x, "sample columns in x")->check(CLI::PositiveNumber);

  ProblemOptions solve_p;
  SolveOptions solve_o;
  auto* solve = app.add_subcommand("solve", "finite-difference solve");
  add_problem_options(solve, solve_p);
  solve->add_option("--nx", solve_o.nx, "grid points");
  solve->add_option("--dt", solve_o.dt, "time step")->check(CLI::PositiveNumber);
  solve->add_option("--c-adv", solve_o.c_adv, "advective step factor")->check(CLI::PositiveNumber);
  solve->add_option("--times", solve_o.times, "snapshot times, comma separated (default t-end)");
  auto* eb = solve->add_flag("--exact-boundary", solve_o.exact_boundary, "Dirichlet data from the exact solution (default)");
  auto* per = solve->add_flag("--periodic", solve_o.periodic, "periodic domain with --init data");
  solve->add_option("--init", solve_o.init, "initial u_a(x), one expression per component");
  eb->excludes(per);

  ProblemOptions conv_p;
  std::string ladder = "100,200,400";
  double conv_dt = NAN, order_lo = 1.8, order_hi = 2.2;
  auto* conv = app.add_subcommand("convergence", "spatial convergence study against an exact solution");
  add_problem_options(conv, conv_p);
  conv->add_option("--ladder", ladder, "grid sizes, comma separated");
  conv->add_option("--dt", conv_dt, "time step on the coarsest grid (scaled with dx^2)");
  conv->add_option("--order-min", order_lo, "lower bound on the observed order");
  conv->add_option("--order-max", order_hi, "upper bound on the observed order");

  auto* report = app.add_subcommand("report", "summarize the JSON artifacts in the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*gen) {
      if (gen_m < 1 || (gen_m > kDefaultMaxM && !common.allow_large_m)) throw ConfigError("invalid m for gen");
      return cmd_gen(gen_m, common, gen_out);
    }
    if (*verify) return cmd_verify(verify_kind, parse_m_range(verify_m, common.allow_large_m), common);
    if (*exact) return cmd_exact(exact_p, common, certify, tol, samples_t, samples_x);
    if (*solve) return cmd_solve(solve_p, common, solve_o);
    if (*conv) {
      if (std::isnan(conv_dt)) conv_dt = conv_p.m == 1 ? 1e-2 : 1e-3;
      return cmd_convergence(conv_p, common, ladder, conv_dt, order_lo, order_hi);
    }
    if (*report) return cmd_report(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hopfcole::CatalogError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hopfcole::NotHeatSolution& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hopfcole::SingularSystem& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericFail;
  } catch (const fdsolve::SolverBlowup& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericFail;
  } catch (const fdsolve::CflFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericFail;
  } catch (const fdsolve::GridError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericFail;
  }
  return kConfigError;
}
