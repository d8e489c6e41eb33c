#include "coverpack/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "coverpack/minimize.hpp"
#include "coverpack/preprocess.hpp"
#include "coverpack/rng.hpp"

namespace coverpack {

namespace {

struct LiveState {
  Instance inst;
  std::vector<int> orig_set;   // live set index -> input instance index
  std::vector<int> orig_elem;  // live element index -> input instance index
};

LiveState initial_state(const Instance& inst) {
  LiveState st;
  st.inst = inst;
  st.orig_set.resize(inst.num_sets);
  for (int i = 0; i < inst.num_sets; ++i) st.orig_set[i] = i;
  st.orig_elem.resize(inst.num_elements);
  for (int e = 0; e < inst.num_elements; ++e) st.orig_elem[e] = e;
  return st;
}

// Installs a reduction: credits forced sets in the input numbering, updates
// the index translations, and restricts a warm-start vector to the
// surviving rows of its side (elements or sets).
void apply_trace(LiveState& st, Instance reduced, const PreprocessTrace& trace,
                 std::optional<Vector>& warm, bool warm_over_elements,
                 std::vector<int>* forced) {
  if (forced)
    for (int i : trace.forced_in) forced->push_back(st.orig_set[i]);
  std::vector<int> new_orig_set(trace.set_renumber.size());
  for (std::size_t k = 0; k < trace.set_renumber.size(); ++k)
    new_orig_set[k] = st.orig_set[trace.set_renumber[k]];
  std::vector<int> new_orig_elem(trace.element_renumber.size());
  for (std::size_t k = 0; k < trace.element_renumber.size(); ++k)
    new_orig_elem[k] = st.orig_elem[trace.element_renumber[k]];
  if (warm) {
    const auto& keep = warm_over_elements ? trace.element_renumber : trace.set_renumber;
    Vector w(static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) w[static_cast<int>(k)] = (*warm)[keep[k]];
    warm = std::move(w);
  }
  st.inst = std::move(reduced);
  st.orig_set = std::move(new_orig_set);
  st.orig_elem = std::move(new_orig_elem);
}

void run_preprocess(LiveState& st, ProblemKind kind, PreprocessLevel level,
                    std::optional<Vector>& warm, bool warm_over_elements,
                    std::vector<int>* forced) {
  if (level == PreprocessLevel::none) return;
  try {
    for (;;) {
      {
        auto [reduced, trace] = basic_preprocess(st.inst, kind);
        apply_trace(st, std::move(reduced), trace, warm, warm_over_elements, forced);
      }
      if (level != PreprocessLevel::subsume) return;
      auto [reduced, trace] = subsumption_preprocess(st.inst, kind);
      const bool changed = reduced.num_sets != st.inst.num_sets ||
                           reduced.num_elements != st.inst.num_elements;
      apply_trace(st, std::move(reduced), trace, warm, warm_over_elements, forced);
      if (!changed) return;
    }
  } catch (const Infeasible& ex) {
    const int original = st.orig_elem[ex.element];
    throw Infeasible(original,
                     "element " + std::to_string(original) + " is in no set");
  }
}

// Argmax with ties drawn uniformly. A +inf sentinel wins outright at the
// lowest index without consuming randomness.
int select_set(const Vector& v, double tie_threshold, Rng& rng, int& ties) {
  const int m = static_cast<int>(v.size());
  for (int i = 0; i < m; ++i)
    if (std::isinf(v[i]) && v[i] > 0.0) return i;
  const double vmax = v.maxCoeff();
  std::vector<int> tied;
  for (int i = 0; i < m; ++i)
    if (v[i] >= vmax - tie_threshold) tied.push_back(i);
  if (tied.size() == 1) return tied.front();
  ++ties;
  return tied[rng.below(tied.size())];
}

void reduce_cover(LiveState& st, int pick, std::optional<Vector>& warm,
                  bool warm_over_elements) {
  const Instance& cur = st.inst;
  std::vector<char> elem_alive(cur.num_elements, 1);
  for (int e : cur.sets[pick]) elem_alive[e] = 0;
  PreprocessTrace trace;
  std::vector<int> new_elem(cur.num_elements, -1);
  for (int e = 0; e < cur.num_elements; ++e) {
    if (!elem_alive[e]) continue;
    new_elem[e] = static_cast<int>(trace.element_renumber.size());
    trace.element_renumber.push_back(e);
  }
  std::vector<std::vector<int>> sets;
  std::vector<double> costs;
  for (int i = 0; i < cur.num_sets; ++i) {
    if (i == pick) continue;
    trace.set_renumber.push_back(i);
    std::vector<int> filtered;
    for (int e : cur.sets[i])
      if (elem_alive[e]) filtered.push_back(new_elem[e]);
    sets.push_back(std::move(filtered));
    costs.push_back(cur.costs[i]);
  }
  Instance reduced;
  reduced.num_sets = static_cast<int>(sets.size());
  reduced.num_elements = static_cast<int>(trace.element_renumber.size());
  reduced.neighbourhoods = neighbourhoods_from_sets(sets, reduced.num_elements);
  reduced.sets = std::move(sets);
  reduced.costs = std::move(costs);
  apply_trace(st, std::move(reduced), trace, warm, warm_over_elements, nullptr);
}

void reduce_pack(LiveState& st, int pick, std::optional<Vector>& warm) {
  const Instance& cur = st.inst;
  std::vector<char> keep(cur.num_sets, 1);
  keep[pick] = 0;
  for (int e : cur.sets[pick])
    for (int j : cur.neighbourhoods[e]) keep[j] = 0;
  PreprocessTrace trace;
  trace.element_renumber.resize(cur.num_elements);
  for (int e = 0; e < cur.num_elements; ++e) trace.element_renumber[e] = e;
  std::vector<std::vector<int>> sets;
  std::vector<double> costs;
  for (int i = 0; i < cur.num_sets; ++i) {
    if (!keep[i]) continue;
    trace.set_renumber.push_back(i);
    sets.push_back(cur.sets[i]);
    costs.push_back(cur.costs[i]);
  }
  Instance reduced;
  reduced.num_sets = static_cast<int>(sets.size());
  reduced.num_elements = cur.num_elements;
  reduced.neighbourhoods = neighbourhoods_from_sets(sets, reduced.num_elements);
  reduced.sets = std::move(sets);
  reduced.costs = std::move(costs);
  apply_trace(st, std::move(reduced), trace, warm, false, nullptr);
}

RunReport run_core(const Instance& inst, const EngineConfig& cfg, ProblemKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(cfg.tie_threshold >= 0.0))
    throw InvalidInstance("tie_threshold must be non-negative");
  if (is_cover_family(cfg.valuation.family) != (kind == ProblemKind::cover))
    throw InvalidInstance("valuation family does not match the problem kind");

  RunReport rep;
  Rng rng(cfg.rng_seed);
  LiveState st = initial_state(inst);
  const bool is_fixed_point = cfg.valuation.family == ValuationFamily::new_cover ||
                              cfg.valuation.family == ValuationFamily::new_pack;
  const bool warm_over_elements = cfg.valuation.family == ValuationFamily::new_cover;
  std::optional<Vector> warm;

  for (;;) {
    run_preprocess(st, kind, cfg.preprocessing, warm, warm_over_elements, &rep.forced_sets);
    if (kind == ProblemKind::cover) {
      if (st.inst.num_elements == 0) break;
      for (int e = 0; e < st.inst.num_elements; ++e)
        if (st.inst.neighbourhoods[e].empty()) {
          const int original = st.orig_elem[e];
          throw Infeasible(original,
                           "element " + std::to_string(original) + " is in no set");
        }
    } else if (st.inst.num_sets == 0) {
      break;
    }
    const ValuationResult vr =
        evaluate(st.inst, cfg.valuation, is_fixed_point ? warm : std::optional<Vector>{});
    rep.per_step_iterations.push_back(vr.iterations);
    if (!vr.converged) ++rep.nonconverged_steps;
    const int pick = select_set(vr.v, cfg.tie_threshold, rng, rep.ties_encountered);
    rep.selection_order.push_back(st.orig_set[pick]);
    ++rep.steps;
    if (is_fixed_point) warm = warm_over_elements ? vr.d : std::optional<Vector>(vr.v);
    if (kind == ProblemKind::cover)
      reduce_cover(st, pick, warm, warm_over_elements);
    else
      reduce_pack(st, pick, warm);
  }

  std::sort(rep.forced_sets.begin(), rep.forced_sets.end());
  std::vector<int> chosen = rep.forced_sets;
  chosen.insert(chosen.end(), rep.selection_order.begin(), rep.selection_order.end());
  rep.solution = make_solution(inst, kind, std::move(chosen));
  rep.objective_before_minimize = rep.solution.objective;

  if (kind == ProblemKind::cover && cfg.minimize_result != MinimizeMode::none) {
    std::vector<int> slim = cfg.minimize_result == MinimizeMode::wool_grossman
                                ? wool_grossman(inst, rep.solution.chosen)
                                : recursive_minimize(inst, rep.solution.chosen, cfg);
    rep.solution = make_solution(inst, kind, std::move(slim));
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

EngineConfig default_engine_config(ValuationFamily family) {
  EngineConfig cfg;
  cfg.valuation.family = family;
  if (family == ValuationFamily::new_cover) cfg.valuation.solver.early_stop = EarlyStop::gap;
  return cfg;
}

bool is_cover_family(ValuationFamily family) {
  return family == ValuationFamily::std_cover || family == ValuationFamily::new_cover;
}

RunReport greedy_cover(const Instance& inst, const EngineConfig& cfg) {
  return run_core(inst, cfg, ProblemKind::cover);
}

RunReport greedy_pack(const Instance& inst, const EngineConfig& cfg) {
  return run_core(inst, cfg, ProblemKind::packing);
}

RunReport run_greedy(const Instance& inst, const EngineConfig& cfg) {
  return is_cover_family(cfg.valuation.family) ? greedy_cover(inst, cfg)
                                               : greedy_pack(inst, cfg);
}

BestOfReport best_of_k(const Instance& inst, const EngineConfig& cfg, int k) {
  if (k < 1) throw InvalidInstance("best_of_k needs k >= 1");
  const bool cover = is_cover_family(cfg.valuation.family);
  BestOfReport rep;
  bool have = false;
  for (int j = 0; j < k; ++j) {
    EngineConfig run_cfg = cfg;
    run_cfg.rng_seed = cfg.rng_seed + static_cast<std::uint64_t>(j);
    RunReport run = run_greedy(inst, run_cfg);
    rep.objectives.push_back(run.solution.objective);
    const bool better =
        !have || (cover ? run.solution.objective < rep.best.solution.objective
                        : run.solution.objective > rep.best.solution.objective);
    if (better) {
      rep.best = std::move(run);
      rep.best_seed = run_cfg.rng_seed;
      have = true;
    }
  }
  return rep;
}

}  // namespace coverpack
