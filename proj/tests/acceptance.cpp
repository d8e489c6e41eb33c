#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coverpack/bench.hpp"
#include "coverpack/fixed_point.hpp"
#include "coverpack/greedy.hpp"
#include "coverpack/io.hpp"
#include "coverpack/minimize.hpp"
#include "coverpack/preprocess.hpp"
#include "coverpack/rng.hpp"
#include "coverpack/valuations.hpp"
#include "oracle.hpp"

using namespace coverpack;

namespace {

struct Outcome {
  enum class Kind { pass, fail, skip };
  Kind kind = Kind::pass;
  std::string detail;
};

Outcome pass(std::string detail = {}) { return {Outcome::Kind::pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Outcome::Kind::fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Outcome::Kind::skip, std::move(detail)}; }

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

Matrix golden4() {
  Matrix m(4, 4);
  m << 3, 2, 1, 2,
       2, 3, 1, 1,
       1, 1, 2, 1,
       2, 1, 1, 2;
  return m;
}

double harmonic(int k) {
  double h = 0.0;
  for (int i = 1; i <= k; ++i) h += 1.0 / i;
  return h;
}

Instance temptation_instance() {
  return build_instance({{0, 2}, {1, 3}, {2, 3}, {0, 1}}, {2, 2, 1, 5});
}

Instance generated(int m, int n, double rho, const char* costs, std::uint64_t seed) {
  DistributionSpec spec;
  spec.m = m;
  spec.n = n;
  spec.rho = rho;
  spec.cost_model = parse_cost_model(costs);
  spec.seed = seed;
  return generate(spec);
}

Outcome golden_values() {
  const auto timed_solve = [](const Matrix& m, FixedPointResult& res) {
    const FixedPointOperator op(m);
    double best_ms = 1e18;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      res = solve_blended(op);
      const auto t1 = std::chrono::steady_clock::now();
      best_ms = std::min(best_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best_ms;
  };

  FixedPointResult r4;
  const double ms4 = timed_solve(golden4(), r4);
  Vector want4(4);
  want4 << 0.327149, 0.373344, 0.479752, 0.424410;
  if (!r4.converged) return fail("4x4 solve did not converge");
  const double err4 = (r4.v - want4).cwiseAbs().maxCoeff();
  if (err4 > 1e-5) return fail("4x4 off by " + fmt(err4));

  Matrix c(3, 3);
  c << 1, 1, 1,
       1, 1, 0,
       1, 0, 1;
  FixedPointResult r3;
  const double ms3 = timed_solve(c, r3);
  const double s5 = std::sqrt(5.0);
  Vector want3(3);
  want3 << std::sqrt(s5 - 2.0), std::sqrt((s5 - 1.0) / 2.0), std::sqrt((s5 - 1.0) / 2.0);
  if (!r3.converged) return fail("3x3 solve did not converge");
  const double err3 = (r3.v - want3).cwiseAbs().maxCoeff();
  if (err3 > 1e-10) return fail("3x3 off by " + fmt(err3));

  if (ms4 >= 1.0 || ms3 >= 1.0)
    return fail("solves took " + fmt(ms4) + " / " + fmt(ms3) + " ms");
  return pass(fmt(err4) + " / " + fmt(err3) + " max error");
}

Outcome naive_failure() {
  const FixedPointOperator op(golden4());
  const NaiveTrajectory tr = naive_iterate(op, Vector::Ones(4), 1001);
  Vector want1(4);
  want1 << 0.125, 0.142857, 0.2, 0.166667;
  const double err1 = (tr.iterates[1] - want1).cwiseAbs().maxCoeff();
  if (err1 > 1e-6) return fail("first iterate off by " + fmt(err1));
  const double two_step = (tr.iterates[1001] - tr.iterates[999]).cwiseAbs().maxCoeff();
  const double one_step = (tr.iterates[1000] - tr.iterates[999]).cwiseAbs().maxCoeff();
  if (two_step >= 1e-6) return fail("two-step change " + fmt(two_step));
  if (one_step <= 0.1) return fail("one-step change " + fmt(one_step));
  if (!tr.cycle_suspected) return fail("cycle not flagged");
  return pass("locked with one-step swing " + fmt(one_step));
}

Outcome convergence_speed() {
  Rng rng(33);
  int worst_iters = 0;
  double worst_gap = 0.0;
  int solved = 0;
  for (int n : {5, 50, 500}) {
    const int count = n == 5 ? 34 : 33;
    for (int t = 0; t < count; ++t) {
      Matrix m(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = rng.uniform(0.0, 5.0);
      m.diagonal().array() += 5.0;
      const FixedPointOperator op(m);
      const FixedPointResult blend = solve_blended(op);
      if (blend.reason != StopReason::step_tolerance || blend.iterations > 60)
        return fail("n=" + std::to_string(n) + " trial " + std::to_string(t) + " took " +
                    std::to_string(blend.iterations) + " iterations");
      worst_iters = std::max(worst_iters, blend.iterations);
      const FixedPointResult quad = solve_quadratic(op);
      const double gap = (blend.v - quad.v).cwiseAbs().maxCoeff();
      if (quad.reason != StopReason::step_tolerance || gap > 1e-9)
        return fail("quadratic disagrees by " + fmt(gap) + " at n=" + std::to_string(n));
      worst_gap = std::max(worst_gap, gap);
      ++solved;
    }
  }
  return pass(std::to_string(solved) + " matrices, worst " + std::to_string(worst_iters) +
              " iterations, methods within " + fmt(worst_gap));
}

Outcome hard_ratio() {
  for (int n : {4, 16, 256, 4096}) {
    const Instance inst = hard_instance(n, 0.01);
    EngineConfig cfg = default_engine_config(ValuationFamily::std_cover);
    const RunReport rep = greedy_cover(inst, cfg);
    const double want = harmonic(n);
    if (std::abs(rep.solution.objective - want) > 1e-9)
      return fail("n=" + std::to_string(n) + " cost " + fmt(rep.solution.objective) +
                  " wants H=" + fmt(want));
    const double ratio = rep.solution.objective / 1.01;
    if (std::abs(ratio - want / 1.01) > 1e-9)
      return fail("n=" + std::to_string(n) + " ratio " + fmt(ratio));
  }
  return pass("H(n)/1.01 attained up to n=4096");
}

Outcome minimization_golden() {
  const Instance inst = temptation_instance();
  std::set<int> second_picks;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EngineConfig cfg = default_engine_config(ValuationFamily::std_cover);
    cfg.preprocessing = PreprocessLevel::none;
    cfg.rng_seed = seed;
    cfg.minimize_result = MinimizeMode::wool_grossman;
    const RunReport rep = greedy_cover(inst, cfg);
    if (std::abs(rep.objective_before_minimize - 5.0) > 1e-12)
      return fail("seed " + std::to_string(seed) + " pre-cost " +
                  fmt(rep.objective_before_minimize));
    if (std::abs(rep.solution.objective - 4.0) > 1e-12)
      return fail("seed " + std::to_string(seed) + " post-cost " +
                  fmt(rep.solution.objective));
    if (rep.selection_order.size() > 1) second_picks.insert(rep.selection_order[1]);
  }
  if (second_picks != std::set<int>{0, 1})
    return fail("only one tie branch exercised over 50 seeds");
  return pass("5 -> 4 on both branches");
}

Outcome oracle_suite() {
  Rng seeds(777);
  int instances = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 210; ++trial) {
    oracle::TinyOptions opt;
    opt.max_sets = 12;
    opt.max_elements = 12;
    opt.integer_costs = trial % 3 == 0;
    opt.nonpositive_costs = trial % 3 == 2;
    Rng gen(seeds.next());
    const Instance inst = oracle::random_tiny(gen, opt);
    ++instances;
    const auto best = oracle::best_cover_cost(inst);
    bool positive_costs = true;
    for (double c : inst.costs) positive_costs = positive_costs && c > 0.0;

    for (ValuationFamily family : {ValuationFamily::std_cover, ValuationFamily::new_cover}) {
      EngineConfig cfg = default_engine_config(family);
      cfg.rng_seed = seeds.next();
      try {
        const RunReport rep = greedy_cover(inst, cfg);
        if (!best) return fail("cover found on an infeasible instance");
        if (!is_cover(inst, rep.solution.chosen)) return fail("invalid cover returned");
        if (rep.solution.objective < *best - 1e-9)
          return fail("cover cost " + fmt(rep.solution.objective) + " beats optimum " +
                      fmt(*best));
        if (family == ValuationFamily::std_cover && positive_costs) {
          int kmax = 0;
          for (const auto& s : inst.sets) kmax = std::max(kmax, static_cast<int>(s.size()));
          if (rep.solution.objective > harmonic(kmax) * *best + 1e-9)
            return fail("std cover exceeds the harmonic bound");
        }
      } catch (const Infeasible&) {
        if (best) return fail("feasible instance reported infeasible");
        ++infeasible;
      }
    }

    const double best_pack = oracle::best_packing_weight(inst);
    for (ValuationFamily family : {ValuationFamily::std_pack, ValuationFamily::root_pack,
                                   ValuationFamily::mis_pack, ValuationFamily::new_pack}) {
      EngineConfig cfg = default_engine_config(family);
      cfg.rng_seed = seeds.next();
      const RunReport rep = greedy_pack(inst, cfg);
      if (!is_packing(inst, rep.solution.chosen)) return fail("invalid packing returned");
      if (rep.solution.objective > best_pack + 1e-9)
        return fail("packing weight " + fmt(rep.solution.objective) + " beats optimum " +
                    fmt(best_pack));
    }

    try {
      const auto [reduced, trace] = basic_preprocess(inst, ProblemKind::cover);
      const auto reduced_best = oracle::best_cover_cost(reduced);
      if (!best != !reduced_best) return fail("basic preprocess changed cover feasibility");
      if (best) {
        double forced = 0.0;
        for (int i : trace.forced_in) forced += inst.costs[i];
        if (std::abs(forced + *reduced_best - *best) > 1e-9)
          return fail("basic preprocess shifted the cover optimum by " +
                      fmt(forced + *reduced_best - *best));
        const auto [sub, subtrace] = subsumption_preprocess(reduced, ProblemKind::cover);
        const auto sub_best = oracle::best_cover_cost(sub);
        if (!sub_best || std::abs(*sub_best - *reduced_best) > 1e-9)
          return fail("cover subsumption shifted the optimum");
      }
    } catch (const Infeasible&) {
      if (best) return fail("basic preprocess rejected a feasible instance");
    }

    const auto [reduced, trace] = basic_preprocess(inst, ProblemKind::packing);
    double forced = 0.0;
    for (int i : trace.forced_in) forced += inst.costs[i];
    if (std::abs(forced + oracle::best_packing_weight(reduced) - best_pack) > 1e-9)
      return fail("basic preprocess shifted the packing optimum");
    const auto [sub, subtrace] = subsumption_preprocess(reduced, ProblemKind::packing);
    double sub_forced = forced;
    for (int i : subtrace.forced_in) sub_forced += reduced.costs[i];
    if (std::abs(sub_forced + oracle::best_packing_weight(sub) - best_pack) > 1e-9)
      return fail("packing subsumption shifted the optimum");
  }
  return pass(std::to_string(instances) + " instances, " + std::to_string(infeasible) +
              " infeasible handled");
}

Outcome trend_replication() {
  ExperimentSpec cover;
  cover.kind = ProblemKind::cover;
  cover.distribution.m = 1000;
  cover.distribution.n = 200;
  cover.distribution.rho = 0.02;
  cover.distribution.cost_model = parse_cost_model("continuous:1,50");
  cover.distribution.seed = 2013;
  cover.instances = 20;
  AlgorithmSpec newc;
  newc.name = "newc";
  newc.config = default_engine_config(ValuationFamily::new_cover);
  newc.runs = 1;
  AlgorithmSpec std50;
  std50.name = "std";
  std50.config = default_engine_config(ValuationFamily::std_cover);
  std50.runs = 50;
  cover.algorithms = {newc, std50};
  const ExperimentResult cres = run_experiment(cover);
  const AlgorithmSummary& csum = cres.summary[0];
  if (csum.best_share_pre < 0.70)
    return fail("NEWC pre-minimization best-share " + fmt(csum.best_share_pre) + " < 0.70");
  if (csum.quality_pre > 1.02)
    return fail("NEWC mean quality " + fmt(csum.quality_pre) + " > 1.02");

  ExperimentSpec pack;
  pack.kind = ProblemKind::packing;
  pack.distribution.m = 1000;
  pack.distribution.n = 200;
  pack.distribution.rho = 0.02;
  pack.distribution.cost_model = parse_cost_model("discrete:1,50");
  pack.distribution.seed = 6174;
  pack.instances = 20;
  AlgorithmSpec newp;
  newp.name = "newp";
  newp.config = default_engine_config(ValuationFamily::new_pack);
  newp.runs = 1;
  AlgorithmSpec mis50;
  mis50.name = "mis";
  mis50.config = default_engine_config(ValuationFamily::mis_pack);
  mis50.runs = 50;
  pack.algorithms = {newp, mis50};
  const ExperimentResult pres = run_experiment(pack);
  const AlgorithmSummary& psum = pres.summary[0];
  if (psum.best_share_post < 0.70)
    return fail("NEWP best-share " + fmt(psum.best_share_post) + " < 0.70");

  return pass("NEWC share " + fmt(csum.best_share_pre) + " quality " + fmt(csum.quality_pre) +
              "; NEWP share " + fmt(psum.best_share_post));
}

Outcome gamma_independence() {
  for (int i = 0; i < 20; ++i) {
    const Instance inst = generated(200, 80, 0.1, "unweighted", 500 + i);
    ValuationSpec g0;
    g0.family = ValuationFamily::new_cover;
    g0.gamma = 0.0;
    ValuationSpec g3;
    g3.family = ValuationFamily::new_cover;
    g3.gamma = -3.0;
    const ValuationResult a = evaluate(inst, g0);
    const ValuationResult b = evaluate(inst, g3);
    const double gap = (a.v - b.v).cwiseAbs().maxCoeff();
    if (!a.converged || !b.converged || gap > 1e-9)
      return fail("instance " + std::to_string(i) + " gamma gap " + fmt(gap));
  }
  return pass("gamma 0 and -3 agree on 20 instances");
}

Outcome orlib_spot_check() {
  std::vector<std::string> candidates;
  if (const char* dir = std::getenv("ORLIB_DIR")) {
    candidates.push_back(std::string(dir) + "/scp41.txt");
    candidates.push_back(std::string(dir) + "/scp41");
  }
  for (const char* rel : {"data/orlib/scp41.txt", "data/orlib/scp41",
                          "../data/orlib/scp41.txt", "../data/orlib/scp41"})
    candidates.push_back(rel);
  std::ifstream in;
  std::string found;
  for (const std::string& path : candidates) {
    in.open(path);
    if (in) {
      found = path;
      break;
    }
    in.clear();
  }
  if (found.empty())
    return skip("scp41 not present; set ORLIB_DIR or add data/orlib/scp41.txt");

  const Instance inst = parse_orlib(in);
  if (inst.num_sets != 1000 || inst.num_elements != 200)
    return fail("scp41 parsed to m=" + std::to_string(inst.num_sets) +
                ", n=" + std::to_string(inst.num_elements));

  EngineConfig newc = default_engine_config(ValuationFamily::new_cover);
  newc.minimize_result = MinimizeMode::wool_grossman;
  const double newc_cost = greedy_cover(inst, newc).solution.objective;
  if (std::abs(newc_cost - 436.0) > 0.05 * 436.0)
    return fail("NEWC cost " + fmt(newc_cost) + " not within 5% of 436");

  EngineConfig std_cfg = default_engine_config(ValuationFamily::std_cover);
  std_cfg.minimize_result = MinimizeMode::wool_grossman;
  const double std_cost = best_of_k(inst, std_cfg, 50).best.solution.objective;
  if (std::abs(std_cost - 434.0) > 0.05 * 434.0)
    return fail("STD best-of-50 cost " + fmt(std_cost) + " not within 5% of 434");

  return pass(found + ": NEWC " + fmt(newc_cost) + ", STD " + fmt(std_cost));
}

Outcome property_sweep() {
  Rng seeds(4242);

  for (int t = 0; t < 15; ++t) {
    const Instance raw = generated(18, 12, 0.25, "continuous:0.5,4", seeds.next());
    for (ProblemKind kind : {ProblemKind::cover, ProblemKind::packing}) {
      const auto [inst, trace] = basic_preprocess(raw, kind);
      if (inst.num_sets == 0) continue;
      const auto families =
          kind == ProblemKind::cover
              ? std::vector<ValuationFamily>{ValuationFamily::std_cover,
                                             ValuationFamily::new_cover}
              : std::vector<ValuationFamily>{ValuationFamily::std_pack,
                                             ValuationFamily::root_pack,
                                             ValuationFamily::mis_pack,
                                             ValuationFamily::new_pack};
      for (ValuationFamily family : families) {
        ValuationSpec vspec;
        vspec.family = family;
        const ValuationResult res = evaluate(inst, vspec);
        for (int i = 0; i < inst.num_sets; ++i)
          if (!(res.v[i] > 0.0) || !std::isfinite(res.v[i]))
            return fail("positivity violated");
      }
    }
  }

  for (int t = 0; t < 10; ++t) {
    const Instance raw = generated(24, 16, 0.2, "continuous:1,9", seeds.next());
    const auto [inst, trace] = basic_preprocess(raw, ProblemKind::cover);
    if (inst.num_sets == 0) continue;
    ValuationSpec vspec;
    vspec.family = ValuationFamily::new_cover;
    const ValuationResult res = evaluate(inst, vspec);
    const FixedPointOperator op = cover_difficulty_operator(inst, vspec.gamma);
    if (!res.converged || !res.d) return fail("residual probe did not converge");
    const double resid = (res.d->array() * op.apply(*res.d).array() - 1.0).abs().maxCoeff();
    if (resid > 1e-9) return fail("cover residual " + fmt(resid));

    ValuationSpec pspec;
    pspec.family = ValuationFamily::new_pack;
    const ValuationResult pres = evaluate(inst, pspec);
    if (!pres.converged) return fail("packing residual probe did not converge");
    const auto rows = intersecting_sets(inst);
    for (int i = 0; i < inst.num_sets; ++i) {
      double dot = 0.0;
      for (int j : rows[i]) dot += pres.v[j];
      if (std::abs(pres.v[i] * dot / inst.costs[i] - 1.0) > 1e-9)
        return fail("packing residual at set " + std::to_string(i));
    }
  }

  for (int t = 0; t < 10; ++t) {
    const Instance raw = generated(20, 14, 0.25, "continuous:1,9", seeds.next());
    const auto [inst, trace] = basic_preprocess(raw, ProblemKind::cover);
    if (inst.num_sets < 2) continue;
    for (double lambda : {0.5, 100.0}) {
      Instance scaled = inst;
      for (double& c : scaled.costs) c *= lambda;
      for (ValuationFamily family :
           {ValuationFamily::std_cover, ValuationFamily::new_cover, ValuationFamily::std_pack,
            ValuationFamily::root_pack, ValuationFamily::mis_pack,
            ValuationFamily::new_pack}) {
        ValuationSpec vspec;
        vspec.family = family;
        int arg_plain = 0, arg_scaled = 0;
        evaluate(inst, vspec).v.maxCoeff(&arg_plain);
        evaluate(scaled, vspec).v.maxCoeff(&arg_scaled);
        if (arg_plain != arg_scaled) return fail("scaling moved an argmax");
      }
    }
  }

  for (int t = 0; t < 10; ++t) {
    Rng mk(seeds.next());
    Matrix half(6, 6);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) half(r, c) = mk.uniform(0.0, 1.0);
    Matrix psd = half * half.transpose();
    psd.diagonal().array() += 1.0;
    const UniquenessReport rep = uniqueness_probe(FixedPointOperator(psd), {}, 10, mk.next());
    if (!rep.unique || rep.nonpositive_k != 0)
      return fail("PSD uniqueness probe failed at trial " + std::to_string(t));
  }

  for (int t = 0; t < 5; ++t) {
    const Instance inst = generated(30, 20, 0.2, "continuous:1,9", seeds.next());
    EngineConfig cfg = default_engine_config(ValuationFamily::new_cover);
    cfg.rng_seed = seeds.next();
    const RunReport a = greedy_cover(inst, cfg);
    const RunReport b = greedy_cover(inst, cfg);
    if (a.selection_order != b.selection_order || a.solution.objective != b.solution.objective)
      return fail("cover run not reproducible per seed");
    EngineConfig pcfg = default_engine_config(ValuationFamily::std_pack);
    pcfg.rng_seed = cfg.rng_seed;
    const RunReport pa = greedy_pack(inst, pcfg);
    const RunReport pb = greedy_pack(inst, pcfg);
    if (pa.selection_order != pb.selection_order) return fail("packing run not reproducible");
  }

  for (int t = 0; t < 50; ++t) {
    oracle::TinyOptions opt;
    Rng gen(seeds.next());
    const Instance inst = oracle::random_tiny(gen, opt);
    EngineConfig cover_cfg = default_engine_config(ValuationFamily::std_cover);
    cover_cfg.rng_seed = seeds.next();
    try {
      if (!is_cover(inst, greedy_cover(inst, cover_cfg).solution.chosen))
        return fail("validity sweep produced a non-cover");
    } catch (const Infeasible&) {
    }
    EngineConfig pack_cfg = default_engine_config(ValuationFamily::root_pack);
    pack_cfg.rng_seed = seeds.next();
    if (!is_packing(inst, greedy_pack(inst, pack_cfg).solution.chosen))
      return fail("validity sweep produced a non-packing");
  }

  return pass("positivity, residuals, scaling, K-positivity, determinism, validity");
}

struct Criterion {
  int index;
  const char* name;
  std::function<Outcome()> body;
  double budget_seconds;  // 0 disables the runtime check
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "fixed-point golden values", golden_values, 0.0},
      {2, "naive-iteration failure", naive_failure, 0.0},
      {3, "convergence speed", convergence_speed, 30.0},
      {4, "hard-instance harmonic ratio", hard_ratio, 10.0},
      {5, "minimization golden test", minimization_golden, 0.0},
      {6, "brute-force oracle suite", oracle_suite, 120.0},
      {7, "trend replication", trend_replication, 900.0},
      {8, "unweighted gamma-independence", gamma_independence, 0.0},
      {9, "or-library scp41 spot check", orlib_spot_check, 0.0},
      {10, "property sweep", property_sweep, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      outcome = c.body();
    } catch (const std::exception& ex) {
      outcome = fail(std::string("threw: ") + ex.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (outcome.kind == Outcome::Kind::pass && c.budget_seconds > 0.0 &&
        seconds > c.budget_seconds)
      outcome = fail("exceeded the " + fmt(c.budget_seconds) + " s budget");

    const char* tag = outcome.kind == Outcome::Kind::pass   ? "[PASS]"
                      : outcome.kind == Outcome::Kind::skip ? "[SKIP]"
                                                            : "[FAIL]";
    std::cout << tag << " " << c.index << ". " << c.name;
    if (!outcome.detail.empty()) std::cout << ": " << outcome.detail;
    std::cout << " (" << fmt(seconds) << " s)\n";
    if (outcome.kind == Outcome::Kind::fail) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria hold\n"
                              : "acceptance: " + std::to_string(failures) + " failed\n");
  return failures;
}
