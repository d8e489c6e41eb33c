// Command line front end: solve, gen, bench, and fixedpoint subcommands.
// Exit codes: 0 success, 1 infeasible instance or failed verification,
// 2 malformed input or configuration.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "coverpack/bench.hpp"
#include "coverpack/fixed_point.hpp"
#include "coverpack/greedy.hpp"
#include "coverpack/io.hpp"
#include "coverpack/minimize.hpp"
#include "coverpack/model.hpp"
#include "coverpack/preprocess.hpp"

namespace {

using nlohmann::json;
using namespace coverpack;

std::string round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

Instance load_instance(const std::string& path, const std::string& format) {
  std::ifstream in = open_input(path);
  return format == "orlib" ? parse_orlib(in) : parse_native(in);
}

struct SolveOptions {
  std::string kind;
  std::string input;
  std::string format = "native";
  std::string alg;
  double gamma = -3.0;
  double epsilon = 0.0;
  int runs = 1;
  std::uint64_t seed = 0;
  std::string preprocess = "basic";
  std::string minimize = "none";
  double tie_threshold = 1e-7;
  bool as_json = false;
  std::string verify;
};

int verify_solution(const Instance& inst, ProblemKind kind, const std::string& path) {
  std::ifstream in = open_input(path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& ex) {
    throw Error("cannot parse '" + path + "': " + ex.what());
  }
  if (!doc.contains("chosen") || !doc["chosen"].is_array())
    throw Error("'" + path + "' has no chosen array");
  std::vector<int> chosen;
  for (const auto& v : doc["chosen"]) chosen.push_back(v.get<int>());
  const std::string want = kind == ProblemKind::cover ? "cover" : "pack";
  if (doc.value("kind", want) != want) {
    std::cout << "FAIL: solution kind is " << doc["kind"] << ", expected " << want << "\n";
    return 1;
  }
  for (int i : chosen)
    if (i < 0 || i >= inst.num_sets) {
      std::cout << "FAIL: set index " << i << " out of range\n";
      return 1;
    }
  const bool valid =
      kind == ProblemKind::cover ? is_cover(inst, chosen) : is_packing(inst, chosen);
  if (!valid) {
    std::cout << "FAIL: chosen sets are not a valid " << want << "\n";
    return 1;
  }
  const double recomputed = solution_cost(inst, chosen);
  if (doc.contains("objective")) {
    const double claimed = doc["objective"].get<double>();
    if (std::abs(claimed - recomputed) > 1e-9 * std::max(1.0, std::abs(claimed))) {
      std::cout << "FAIL: objective " << format_exact(claimed) << " but recomputed "
                << format_exact(recomputed) << "\n";
      return 1;
    }
  }
  std::cout << "OK: valid " << want << " of " << chosen.size() << " sets, objective "
            << format_exact(recomputed) << "\n";
  return 0;
}

int run_solve(const SolveOptions& opt) {
  const ProblemKind kind = opt.kind == "cover" ? ProblemKind::cover : ProblemKind::packing;
  const Instance inst = load_instance(opt.input, opt.format);
  if (!opt.verify.empty()) return verify_solution(inst, kind, opt.verify);
  if (opt.alg.empty()) throw Error("solve needs --alg (or --verify FILE)");

  const ValuationFamily family = family_from_name(opt.alg);
  if (is_cover_family(family) != (kind == ProblemKind::cover))
    throw Error("algorithm '" + opt.alg + "' does not solve " + opt.kind);
  EngineConfig cfg = default_engine_config(family);
  cfg.valuation.gamma = opt.gamma;
  cfg.valuation.epsilon = opt.epsilon;
  cfg.rng_seed = opt.seed;
  cfg.tie_threshold = opt.tie_threshold;
  if (opt.preprocess == "basic")
    cfg.preprocessing = PreprocessLevel::basic;
  else if (opt.preprocess == "subsume")
    cfg.preprocessing = PreprocessLevel::subsume;
  else
    cfg.preprocessing = PreprocessLevel::none;
  if (opt.minimize == "wg")
    cfg.minimize_result = MinimizeMode::wool_grossman;
  else if (opt.minimize == "recursive")
    cfg.minimize_result = MinimizeMode::recursive;
  if (cfg.minimize_result != MinimizeMode::none && kind != ProblemKind::cover)
    throw Error("--minimize applies to cover only");

  const BestOfReport rep = best_of_k(inst, cfg, opt.runs);
  const RunReport& best = rep.best;
  long long iterations = 0;
  for (int it : best.per_step_iterations) iterations += it;

  if (opt.as_json) {
    json out;
    out["kind"] = opt.kind;
    out["algorithm"] = opt.alg;
    out["objective"] = best.solution.objective;
    out["objective_before_minimize"] = best.objective_before_minimize;
    out["chosen"] = best.solution.chosen;
    out["steps"] = best.steps;
    out["forced_sets"] = best.forced_sets;
    out["iterations"] = iterations;
    out["ties"] = best.ties_encountered;
    out["nonconverged_steps"] = best.nonconverged_steps;
    out["runs"] = opt.runs;
    out["seed"] = rep.best_seed;
    out["objectives"] = rep.objectives;
    out["wall_seconds"] = best.wall_seconds;
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cout << "objective: " << format_exact(best.solution.objective) << "\n";
  if (best.solution.objective != best.objective_before_minimize)
    std::cout << "before minimize: " << format_exact(best.objective_before_minimize) << "\n";
  std::cout << "chosen sets:";
  for (int i : best.solution.chosen) std::cout << ' ' << i;
  std::cout << "\n";
  std::cout << "greedy steps: " << best.steps << " (forced by preprocessing: "
            << best.forced_sets.size() << ")\n";
  std::cout << "ties: " << best.ties_encountered << ", inner iterations: " << iterations;
  if (best.nonconverged_steps > 0)
    std::cout << ", nonconverged steps: " << best.nonconverged_steps;
  std::cout << "\n";
  if (opt.runs > 1) {
    std::cout << "runs: " << opt.runs << ", best seed: " << rep.best_seed << ", objectives:";
    for (double obj : rep.objectives) std::cout << ' ' << format_exact(obj);
    std::cout << "\n";
  }
  std::cout << "wall seconds: " << round12(best.wall_seconds) << "\n";
  return 0;
}

int run_gen(int m, int n, double rho, const std::string& costs, std::uint64_t seed,
            const std::string& out_path) {
  DistributionSpec spec;
  spec.m = m;
  spec.n = n;
  spec.rho = rho;
  spec.cost_model = parse_cost_model(costs);
  spec.seed = seed;
  const Instance inst = generate(spec);
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path + "'");
  write_native(inst, out);
  std::cout << "wrote " << out_path << ": m=" << inst.num_sets << " n=" << inst.num_elements
            << " density=" << round12(density(inst)) << "\n";
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out_dir) {
  std::ifstream in = open_input(spec_path);
  const ExperimentSpec spec = parse_experiment_spec(in);
  const ExperimentResult res = run_experiment(spec);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/results.csv");
    if (!out) throw Error("cannot write '" + out_dir + "/results.csv'");
    write_summary_csv(res, out);
  }
  {
    std::ofstream out(out_dir + "/per_instance.csv");
    if (!out) throw Error("cannot write '" + out_dir + "/per_instance.csv'");
    write_per_instance_csv(res, out);
  }
  std::cout << res.pre.size() << " instances, " << res.summary.size() << " algorithms ("
            << (res.kind == ProblemKind::cover ? "cover" : "packing") << ")\n";
  for (const auto& s : res.summary) {
    std::cout << "  " << s.name << ": best share " << round12(s.best_share_post) << ", quality "
              << round12(s.quality_post);
    if (res.kind == ProblemKind::cover)
      std::cout << " (pre-minimize: " << round12(s.best_share_pre) << ", "
                << round12(s.quality_pre) << ")";
    std::cout << ", mean steps " << round12(s.mean_steps) << ", " << round12(s.total_seconds)
              << "s\n";
  }
  std::cout << "wrote " << out_dir << "/results.csv and " << out_dir << "/per_instance.csv\n";
  return 0;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in = open_input(path);
  int n = 0;
  if (!(in >> n) || n < 0) throw Error("matrix file must start with its dimension");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!(in >> m(r, c)))
        throw Error("matrix file ended inside row " + std::to_string(r));
  return m;
}

int run_fixedpoint(const std::string& matrix_path, const std::string& method, double tol,
                   int max_iters) {
  const FixedPointOperator op(load_matrix(matrix_path));
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iters;
  auto print_vector = [](const Vector& v) {
    std::cout << "v:";
    for (int i = 0; i < v.size(); ++i) std::cout << ' ' << round12(v[i]);
    std::cout << "\n";
  };
  if (method == "naive") {
    const Vector start = Vector::Ones(op.dim());
    const NaiveTrajectory traj = naive_iterate(op, start, max_iters);
    const Vector& last = traj.iterates.back();
    print_vector(last);
    std::cout << "iterations: " << max_iters << "\n";
    std::cout << "residual: " << round12((last.array() * op.apply(last).array() - 1.0)
                                             .abs()
                                             .maxCoeff())
              << "\n";
    std::cout << "cycle suspected: " << (traj.cycle_suspected ? "yes" : "no") << "\n";
    return 0;
  }
  const FixedPointResult res = method == "quadratic" ? solve_quadratic(op, cfg)
                                                     : solve_blended(op, cfg);
  print_vector(res.v);
  std::cout << "iterations: " << res.iterations << "\n";
  std::cout << "residual: " << round12(res.residual) << "\n";
  std::cout << "converged: " << (res.converged ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy set cover and set packing with fixed-point valuations"};
  app.require_subcommand(1);

  SolveOptions sopt;
  CLI::App* solve = app.add_subcommand("solve", "Run a greedy heuristic on an instance file");
  solve->add_option("kind", sopt.kind, "cover or pack")
      ->required()
      ->check(CLI::IsMember({"cover", "pack"}));
  solve->add_option("--input", sopt.input, "instance file")->required();
  solve->add_option("--format", sopt.format, "instance format (default native)")
      ->check(CLI::IsMember({"native", "orlib"}));
  solve->add_option("--alg", sopt.alg, "std|newc (cover), stdp|root|mis|newp (pack)");
  solve->add_option("--gamma", sopt.gamma, "newc cost exponent (default -3)");
  solve->add_option("--epsilon", sopt.epsilon, "newp diagonal damping in [0,1) (default 0)");
  solve->add_option("--runs", sopt.runs, "best of this many seeded runs (default 1)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", sopt.seed, "base random seed (default 0)");
  solve->add_option("--preprocess", sopt.preprocess, "basic|subsume|none (default basic)")
      ->check(CLI::IsMember({"basic", "subsume", "none"}));
  solve->add_option("--minimize", sopt.minimize, "none|wg|recursive (cover, default none)")
      ->check(CLI::IsMember({"none", "wg", "recursive"}));
  solve->add_option("--tie-threshold", sopt.tie_threshold,
                    "absolute tie window for argmax (default 1e-7)");
  solve->add_flag("--json", sopt.as_json, "emit one JSON object instead of text");
  solve->add_option("--verify", sopt.verify,
                    "verify a JSON solution against the instance instead of solving");

  int gen_m = 0, gen_n = 0;
  double gen_rho = 0.0;
  std::string gen_costs = "unweighted", gen_out;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "Draw a random instance and write it");
  gen->add_option("--m", gen_m, "number of sets")->required();
  gen->add_option("--n", gen_n, "number of elements")->required();
  gen->add_option("--rho", gen_rho, "membership probability in (0,1)")->required();
  gen->add_option("--costs", gen_costs, "unweighted|discrete:a,b|continuous:a,b");
  gen->add_option("--seed", gen_seed, "random seed (default 0)");
  gen->add_option("--out", gen_out, "output file (native format)")->required();

  std::string bench_spec, bench_out;
  CLI::App* bench = app.add_subcommand("bench", "Run an experiment spec over random instances");
  bench->add_option("--spec", bench_spec, "experiment spec file")->required();
  bench->add_option("--out", bench_out, "output directory for CSV tables")->required();

  std::string fp_matrix, fp_method = "blended";
  double fp_tol = 1e-12;
  int fp_iters = 200;
  CLI::App* fixedpoint =
      app.add_subcommand("fixedpoint", "Solve M v = 1/v for a dense matrix file");
  fixedpoint->add_option("--matrix", fp_matrix, "text file: n, then n rows of n reals")
      ->required();
  fixedpoint->add_option("--method", fp_method, "blended|quadratic|naive (default blended)")
      ->check(CLI::IsMember({"blended", "quadratic", "naive"}));
  fixedpoint->add_option("--tol", fp_tol, "step tolerance (default 1e-12)");
  fixedpoint->add_option("--max-iters", fp_iters, "iteration budget (default 200)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(sopt);
    if (gen->parsed()) return run_gen(gen_m, gen_n, gen_rho, gen_costs, gen_seed, gen_out);
    if (bench->parsed()) return run_bench(bench_spec, bench_out);
    if (fixedpoint->parsed()) return run_fixedpoint(fp_matrix, fp_method, fp_tol, fp_iters);
  } catch (const Infeasible& ex) {
    std::cerr << "infeasible: " << ex.what() << "\n";
    return 1;
  } catch (const ParseError& ex) {
    std::cerr << "parse error (line " << ex.line << "): " << ex.what() << "\n";
    return 2;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
