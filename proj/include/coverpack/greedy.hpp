#pragma once

#include <cstdint>
#include <vector>

#include "coverpack/model.hpp"
#include "coverpack/valuations.hpp"

namespace coverpack {

enum class PreprocessLevel { none, basic, subsume };
enum class MinimizeMode { none, wool_grossman, recursive };

struct EngineConfig {
  ValuationSpec valuation;
  // Sets whose value is within this absolute distance of the maximum count
  // as tied; one of them is drawn uniformly. The generator is consumed only
  // when a tie actually occurs, so runs are reproducible per seed.
  double tie_threshold = 1e-7;
  std::uint64_t rng_seed = 0;
  PreprocessLevel preprocessing = PreprocessLevel::basic;
  MinimizeMode minimize_result = MinimizeMode::none;  // cover runs only
};

// Engine configuration with the family's conventional defaults: new_cover
// runs its inner solves with the gap early stop (iterating past the point
// where the leader is decided buys nothing inside the greedy loop).
EngineConfig default_engine_config(ValuationFamily family);

struct RunReport {
  Solution solution;
  // Objective before cover minimization; equals solution.objective when
  // minimization is off or removed nothing.
  double objective_before_minimize = 0.0;
  int steps = 0;                         // greedy selections, forced sets excluded
  std::vector<int> selection_order;      // greedy picks in pick order, original numbering
  std::vector<int> forced_sets;          // sets preprocessing forced in, sorted
  std::vector<int> per_step_iterations;  // inner fixed-point iterations per step
  int ties_encountered = 0;
  int nonconverged_steps = 0;            // steps whose inner solve ran out of budget
  double wall_seconds = 0.0;
};

// One greedy run: preprocess, valuate, pick an argmax (ties resolved
// uniformly at random, +inf sentinels first at the lowest index with no
// randomness), reduce to a compact renumbered subinstance, repeat. Cover
// reduction deletes the chosen set and its covered elements; packing
// reduction deletes the chosen set and everything intersecting it. Warm
// starts for the fixed-point families are carried between steps through the
// renumbering, dropping entries for deleted rows. Reported indices are
// always in the input instance's numbering. Cover runs throw Infeasible
// (with the original element index) when some element cannot be covered.
RunReport greedy_cover(const Instance& inst, const EngineConfig& cfg);
RunReport greedy_pack(const Instance& inst, const EngineConfig& cfg);

// Dispatches on the valuation family's problem kind.
RunReport run_greedy(const Instance& inst, const EngineConfig& cfg);

bool is_cover_family(ValuationFamily family);

struct BestOfReport {
  RunReport best;
  std::uint64_t best_seed = 0;
  std::vector<double> objectives;  // final objective per run, in seed order
};

// Runs seeds rng_seed .. rng_seed + k - 1 and keeps the best final
// objective (lowest for cover, highest for packing); exact ties keep the
// earliest seed, so the winner is deterministic.
BestOfReport best_of_k(const Instance& inst, const EngineConfig& cfg, int k);

}  // namespace coverpack
