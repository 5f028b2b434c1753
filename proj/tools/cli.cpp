#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "susy/aux_ode.hpp"
#include "susy/config.hpp"
#include "susy/errors.hpp"
#include "susy/grid.hpp"
#include "susy/operators.hpp"
#include "susy/propagator.hpp"
#include "susy/solutions.hpp"
#include "susy/symbolic/suite.hpp"

namespace susy::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
  std::optional<int> n, m;
  std::optional<std::string> s;
  int n_max = 3;
};

struct Context {
  RunConfig rc;
  std::ostream& out;
  std::ostream& err;

  fs::path path(const std::string& name) const { return rc.out_dir / name; }
};

RunConfig load(const Globals& g) {
  ConfigMap map;
  fs::path base = ".";
  if (!g.config_path.empty()) {
    map = read_config_file(g.config_path);
    base = fs::path(g.config_path).parent_path();
    if (base.empty()) base = ".";
  }
  for (const auto& o : g.overrides) apply_override(map, o);
  if (g.n) map["state.n"] = std::to_string(*g.n);
  if (g.m) map["state.m"] = std::to_string(*g.m);
  if (g.s) map["state.s"] = *g.s;
  RunConfig rc = parse_run_config(map, base);
  if (g.out_dir) rc.out_dir = *g.out_dir;
  if (g.seed) rc.seed = *g.seed;
  if (g.tol_scale) {
    if (!(*g.tol_scale > 0.0)) throw ConfigError("--tol-scale must be positive");
    rc.tol_scale = *g.tol_scale;
  }
  fs::create_directories(rc.out_dir);
  return rc;
}

AuxSolution raw_solution(const RunConfig& rc) {
  SolveOptions opts;
  opts.tol = rc.ode_tol;
  return solve(rc.profile, rc.physical, rc.t0, rc.t1, rc.f0, rc.f0_dot, opts);
}

std::shared_ptr<const AuxSolution> normalized_solution(const RunConfig& rc) {
  return std::make_shared<const AuxSolution>(normalize_wronskian(raw_solution(rc)));
}

// Fills in the `auto` parts of the grid from the recommendation for `states`.
GridSpec resolve_grid(const RunConfig& rc, const std::vector<QuantumNumbers>& states,
                      const AuxSolution& sol) {
  GridSpec g;
  if (rc.grid_N && rc.grid_L) {
    g.N = *rc.grid_N;
    g.L = *rc.grid_L;
  } else {
    GridSpec rec{16, 0.0};
    for (const auto& qn : states) {
      const GridSpec r = recommend_grid(qn, sol, rc.t0, rc.t1);
      rec.N = std::max(rec.N, r.N);
      rec.L = std::max(rec.L, r.L);
    }
    g.N = rc.grid_N.value_or(rec.N);
    g.L = rc.grid_L.value_or(rec.L);
  }
  g.validate();
  return g;
}

std::string spin_label(double s) { return s > 0 ? "+1/2" : "-1/2"; }

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << text;
}

// ---------------------------------------------------------------------------

int cmd_verify_algebra(Context& c) {
  const auto t_start = std::chrono::steady_clock::now();
  const auto results = symbolic::verify_suite();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  const std::string report = symbolic::to_text_report(results);
  write_text(c.path("algebra_report.txt"), report);
  write_text(c.path("algebra_report.jsonl"), symbolic::to_json_lines(results));
  c.out << report;
  c.out << "elapsed " << std::fixed << std::setprecision(3) << secs << " s\n" << std::defaultfloat;
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kVerificationFailed;
}

int cmd_solve_ode(Context& c) {
  const AuxSolution sol = raw_solution(c.rc);
  sol.write_csv(c.path("aux_solution.csv"), c.rc.t0, c.rc.t1);
  const cplx w = sol.initial_wronskian();
  const double drift = sol.max_wronskian_drift();
  const double drift_tol = 100.0 * c.rc.ode_tol * c.rc.tol_scale;
  double first_system = 0.0;
  for (const auto& node : sol.nodes()) {
    first_system = std::max(first_system, std::abs(context_at(sol, node.t).first_system_residual()));
  }
  const double fs_tol = 1e-10 * c.rc.tol_scale;
  c.out << std::setprecision(6) << "nodes " << sol.nodes().size() << "\n"
        << "W(t0) = " << w.real() << (w.imag() < 0 ? " - " : " + ") << std::abs(w.imag()) << "i"
        << (is_normalized(sol) ? " (normalized)" : " (not normalized; other commands rescale f)") << "\n"
        << "max Wronskian drift " << drift << " (limit " << drift_tol << ")\n"
        << "max first-system residual " << first_system << " (limit " << fs_tol << ")\n";
  const AuxState end = sol.at(c.rc.t1);
  c.out << "f(t1) = " << end.f << ", f'(t1) = " << end.f_dot << ", Omega(t1) = " << end.omega << "\n";
  return drift <= drift_tol && first_system <= fs_tol ? kOk : kVerificationFailed;
}

int cmd_check_operators(Context& c) {
  const auto sol = normalized_solution(c.rc);
  const QuantumNumbers ref = c.rc.state.value_or(QuantumNumbers{0, 0, 0.5});
  const GridSpec grid = resolve_grid(c.rc, {ref}, *sol);
  std::vector<double> times = c.rc.check_times;
  if (times.empty()) times = {c.rc.t0, c.rc.t1};

  std::vector<CheckRow> rows;
  for (double t : times) {
    const auto probes = probe_fields(grid, t, c.rc.probes, c.rc.seed);
    const TimeContext ctx = context_at(*sol, t);
    auto part = standard_checks(probes, ctx, c.rc.tol_scale);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  // The constant-field branch relation only exists for B = const, D = 0, eB > 0.
  if (const auto* k = std::get_if<ConstantField>(&c.rc.profile.variant());
      k && k->D0 == 0.0 && c.rc.physical.e * k->B0 > 0.0) {
    const AuxSolution branch = analytic_constant(c.rc.physical, k->B0, 0.0, 0.0, 1.0);
    for (double t : times) {
      const auto probes = probe_fields(grid, t, c.rc.probes, c.rc.seed);
      const TimeContext ctx = context_at(branch, t);
      double worst = 0.0;
      for (const auto& p : probes) worst = std::max(worst, q_of_minus_B_check(p, ctx, c.rc.profile));
      const double tol = 1e-10 * c.rc.tol_scale;
      rows.push_back({"branch_relation_Q_minus_B", t, worst, tol, worst <= tol});
    }
  }

  write_text(c.path("operator_checks.csv"), to_csv(rows));
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.pass ? 1 : 0;
    if (!r.pass) {
      c.out << "FAIL " << r.identity_name << " t=" << r.t << " residual " << r.residual << " > "
            << r.tolerance << "\n";
    }
  }
  c.out << "grid N=" << grid.N << " L=" << grid.L << ", " << c.rc.probes << " probes, "
        << times.size() << " times\n"
        << passed << "/" << rows.size() << " operator checks within tolerance\n";
  return passed == rows.size() ? kOk : kVerificationFailed;
}

double default_state_time(const RunConfig& rc) { return rc.state_t.value_or(0.5 * (rc.t0 + rc.t1)); }

// Stencil step for the Pauli residual that keeps t +- 2h inside [t0, t1].
double stencil_step(const RunConfig& rc, double t) {
  const double room = std::min(t - rc.t0, rc.t1 - t) / 2.0;
  if (room <= 1e-6) {
    std::ostringstream msg;
    msg << "t = " << t << " is too close to the edge of [" << rc.t0 << ", " << rc.t1
        << "] for the residual stencil";
    throw DomainError(msg.str());
  }
  return std::min(1e-3, room);
}

int cmd_gen_state(Context& c) {
  const QuantumNumbers qn = c.rc.require_state();
  qn.validate();
  const auto sol = normalized_solution(c.rc);
  const GridSpec grid = resolve_grid(c.rc, {qn}, *sol);
  const double t = default_state_time(c.rc);
  const EigenState state(qn, sol, grid);
  const SpinorField psi = state.at(t);
  const PauliResidual res = pauli_residual(state, t, stencil_step(c.rc, t));
  const double norm = psi.norm();

  write_snapshot(c.path("state_snapshot.bin"), psi);
  write_field_csv(c.path("state_field.csv"), psi);
  std::ostringstream meta;
  meta << "n,m,s,t,energy,norm,pauli_residual\n"
       << qn.n << ',' << qn.m << ',' << qn.s << ',' << fmt(t) << ',' << fmt(state.energy()) << ','
       << fmt(norm) << ',' << fmt(res.worst()) << '\n';
  write_text(c.path("state_meta.csv"), meta.str());

  const double res_tol = 1e-5 * c.rc.tol_scale;
  const double norm_tol = 1e-7 * c.rc.tol_scale;
  c.out << "state " << qn.to_string() << " at t=" << t << " on N=" << grid.N << " L=" << grid.L << "\n"
        << "energy " << state.energy() << "\n"
        << "norm " << std::setprecision(12) << norm << "\n"
        << "pauli residual " << std::setprecision(3) << res.worst() << " (limit " << res_tol << ")\n"
        << std::setprecision(6);
  return res.worst() <= res_tol && std::abs(norm - 1.0) <= norm_tol ? kOk : kVerificationFailed;
}

int cmd_residual(Context& c) {
  const QuantumNumbers qn = c.rc.require_state();
  qn.validate();
  const auto sol = normalized_solution(c.rc);
  const GridSpec grid = resolve_grid(c.rc, {qn}, *sol);
  const EigenState state(qn, sol, grid);
  const double h = 1e-3;
  const double lo = c.rc.t0 + 2.0 * h + 1e-9, hi = c.rc.t1 - 2.0 * h - 1e-9;
  if (!(lo < hi)) throw ConfigError("time span too short for the residual sweep");
  const double res_tol = 1e-5 * c.rc.tol_scale;
  const double norm_tol = 1e-7 * c.rc.tol_scale;

  std::ostringstream csv;
  csv << "t,residual,residual_half_step,norm,pass\n";
  bool ok = true;
  double worst = 0.0, worst_norm = 0.0;
  for (int k = 0; k < c.rc.samples; ++k) {
    const double t = c.rc.samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (c.rc.samples - 1);
    const PauliResidual r = pauli_residual(state, t, h);
    const double nrm = state.at(t).norm();
    const bool pass = r.worst() <= res_tol && std::abs(nrm - 1.0) <= norm_tol;
    ok = ok && pass;
    worst = std::max(worst, r.worst());
    worst_norm = std::max(worst_norm, std::abs(nrm - 1.0));
    csv << fmt(t) << ',' << fmt(r.residual) << ',' << fmt(r.residual_half_step) << ',' << fmt(nrm) << ','
        << (pass ? "true" : "false") << '\n';
  }
  write_text(c.path("residual_sweep.csv"), csv.str());
  c.out << "state " << qn.to_string() << " on N=" << grid.N << " L=" << grid.L << ", " << c.rc.samples
        << " times\n"
        << std::setprecision(3) << "max pauli residual " << worst << " (limit " << res_tol << ")\n"
        << "max |norm - 1| " << worst_norm << " (limit " << norm_tol << ")\n"
        << std::setprecision(6);
  return ok ? kOk : kVerificationFailed;
}

std::vector<QuantumNumbers> superposition_states(const RunConfig& rc) {
  std::vector<QuantumNumbers> pool;
  if (rc.state) pool.push_back(*rc.state);
  const std::vector<QuantumNumbers> fixed{{0, 0, 0.5},  {1, 0, -0.5}, {0, -1, 0.5},
                                          {1, -1, -0.5}, {2, 0, 0.5},  {0, -2, -0.5}};
  for (const auto& q : fixed) {
    if (std::find(pool.begin(), pool.end(), q) == pool.end()) pool.push_back(q);
  }
  if (rc.components > static_cast<int>(pool.size())) {
    throw ConfigError("propagate.components must be <= " + std::to_string(pool.size()));
  }
  pool.resize(static_cast<std::size_t>(rc.components));
  return pool;
}

int cmd_propagate(Context& c) {
  const auto sol = normalized_solution(c.rc);
  std::vector<QuantumNumbers> states;
  std::vector<cplx> coeffs;
  if (c.rc.initial == "state") {
    states.push_back(c.rc.require_state());
    coeffs.push_back(1.0);
  } else {
    states = superposition_states(c.rc);
    std::mt19937_64 rng(c.rc.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double total = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      coeffs.emplace_back(u(rng), u(rng));
      total += std::norm(coeffs.back());
    }
    for (auto& a : coeffs) a /= std::sqrt(total);
  }
  for (const auto& q : states) q.validate();
  const GridSpec grid = resolve_grid(c.rc, states, *sol);

  std::vector<EigenState> basis;
  for (const auto& q : states) basis.emplace_back(q, sol, grid);
  auto superpose = [&](double t) {
    SpinorField psi(grid, t);
    for (std::size_t k = 0; k < basis.size(); ++k) psi += coeffs[k] * basis[k].at(t);
    return psi;
  };

  PropagationRun run_spec;
  run_spec.initial = superpose(c.rc.t0);
  run_spec.profile = c.rc.profile;
  run_spec.cfg = c.rc.physical;
  run_spec.sol = sol;
  run_spec.t1 = c.rc.t1;
  run_spec.dt = c.rc.dt;
  run_spec.stride = c.rc.stride;
  const PropagationResult result = run(run_spec);
  write_trajectory_csv(c.path("trajectory.csv"), result);

  const SpinorField exact = superpose(c.rc.t1);
  const double l2_error = (result.final_state - exact).norm() / exact.norm();

  struct Budget {
    Observable o;
    double limit;
  };
  const double s = c.rc.tol_scale;
  const std::vector<Budget> budgets{{Observable::Norm, 1e-8 * s},       {Observable::HTilde, 1e-6 * s},
                                    {Observable::Lz, 1e-6 * s},         {Observable::Sz, 1e-6 * s},
                                    {Observable::QTildePlus, 1e-6 * s}, {Observable::QTildeMinus, 1e-6 * s},
                                    {Observable::BPlusBMinus, 1e-6 * s}};
  const double l2_limit = 1e-4 * s;
  bool ok = l2_error <= l2_limit;

  std::ostringstream rep;
  rep << std::setprecision(6);
  rep << "initial " << c.rc.initial << ":";
  for (std::size_t k = 0; k < states.size(); ++k) {
    rep << (k ? " + " : " ") << "(" << fmt(coeffs[k].real()) << (coeffs[k].imag() < 0 ? "" : "+")
        << fmt(coeffs[k].imag()) << "i)" << states[k].to_string();
  }
  rep << "\ngrid N=" << grid.N << " L=" << grid.L << "\n"
      << "span [" << c.rc.t0 << ", " << c.rc.t1 << "], dt " << result.dt_used << ", " << result.steps
      << " steps, stability bound " << stability_bound(grid, c.rc.profile, c.rc.physical, c.rc.t0, c.rc.t1)
      << "\n"
      << "observable,initial_re,initial_im,max_drift,limit,pass\n";
  for (const auto& b : budgets) {
    const double drift = result.max_drift.at(b.o);
    const cplx v0 = result.rows.front().values.at(b.o);
    const bool pass = drift <= b.limit;
    ok = ok && pass;
    rep << to_string(b.o) << ',' << fmt(v0.real()) << ',' << fmt(v0.imag()) << ',' << fmt(drift) << ','
        << b.limit << ',' << (pass ? "true" : "false") << '\n';
  }
  rep << "final L2 error vs generated solution " << fmt(l2_error) << " (limit " << l2_limit << ") "
      << (l2_error <= l2_limit ? "pass" : "FAIL") << '\n';
  write_text(c.path("conservation_report.txt"), rep.str());
  c.out << rep.str();
  return ok ? kOk : kVerificationFailed;
}

int cmd_spectrum(Context& c, int n_max) {
  if (n_max < 0) throw ConfigError("--n-max must be >= 0");
  std::ostringstream csv;
  csv << "n,s,energy,degeneracy,note\n";
  c.out << std::left << std::setw(4) << "n" << std::setw(7) << "s" << std::setw(8) << "E"
        << "note\n";
  for (int n = 0; n <= n_max; ++n) {
    for (double s : {-0.5, 0.5}) {
      const QuantumNumbers qn{n, 0, s};
      const double e = energy(qn);
      std::string note;
      int degeneracy = 2;
      if (n == 0 && s < 0) {
        note = "unique zero mode";
        degeneracy = 1;
      } else if (s < 0) {
        note = "paired with (" + std::to_string(n - 1) + ",+1/2)";
      } else {
        note = "paired with (" + std::to_string(n + 1) + ",-1/2)";
      }
      csv << n << ',' << spin_label(s) << ',' << e << ',' << degeneracy << ',' << note << '\n';
      c.out << std::setw(4) << n << std::setw(7) << spin_label(s) << std::setw(8) << e << note << '\n';
    }
  }
  c.out << std::right;
  write_text(c.path("spectrum.csv"), csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supersymmetric electron in nonstationary magnetic and electric fields"};
  app.name(args.empty() ? "susy-pauli" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string s_arg;
  app.add_option("-c,--config", g.config_path, "Config file (section.key = value)")->check(CLI::ExistingFile);
  app.add_option("--set", g.overrides, "Override a config key: --set section.key=value (repeatable)");
  auto* out_opt = app.add_option("--out-dir", "Output directory");
  auto* seed_opt = app.add_option("--seed", "Seed for probe fields and random superpositions");
  auto* tol_opt = app.add_option("--tol-scale", "Multiply every verification tolerance");
  auto* n_opt = app.add_option("--n", "Quantum number n");
  auto* m_opt = app.add_option("--m", "Quantum number m");
  auto* s_opt = app.add_option("--s", s_arg, "Spin, +1/2 or -1/2");

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs{
      {"verify-algebra", "Reduce the operator identity suite symbolically"},
      {"solve-ode", "Solve the auxiliary equation and write its trajectory"},
      {"check-operators", "Grid residuals of commutators, superalgebra and adjointness"},
      {"gen-state", "Generate |n,m,s> at one time with its Pauli residual"},
      {"residual", "Pauli residual sweep over time"},
      {"propagate", "Propagate numerically and report conservation"},
      {"spectrum", "Table of eigenvalues n + s + 1/2 with degeneracy"},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.help);
  app.get_subcommand("spectrum")->add_option("--n-max", g.n_max, "Largest n listed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (*out_opt) g.out_dir = out_opt->as<std::string>();
    if (*seed_opt) g.seed = seed_opt->as<std::uint64_t>();
    if (*tol_opt) g.tol_scale = tol_opt->as<double>();
    if (*n_opt) g.n = n_opt->as<int>();
    if (*m_opt) g.m = m_opt->as<int>();
    if (*s_opt) g.s = s_arg;
  } catch (const CLI::ConversionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Context c{load(g), out, err};
    if (cmd == "verify-algebra") return cmd_verify_algebra(c);
    if (cmd == "solve-ode") return cmd_solve_ode(c);
    if (cmd == "check-operators") return cmd_check_operators(c);
    if (cmd == "gen-state") return cmd_gen_state(c);
    if (cmd == "residual") return cmd_residual(c);
    if (cmd == "propagate") return cmd_propagate(c);
    return cmd_spectrum(c, g.n_max);
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const InstabilityError& e) {
    err << "instability: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace susy::cli
