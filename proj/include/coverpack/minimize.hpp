#pragma once

#include <vector>

#include "coverpack/greedy.hpp"
#include "coverpack/model.hpp"

namespace coverpack {

// Removal-based cover minimization. r_e counts how many chosen sets cover
// element e beyond the first; a set whose every element has r_e > 0 is
// redundant. Repeatedly removes the set with the largest slack
// t_i = min_{e in S_i} r_e (ties: largest cost, then largest index) until no
// set is redundant. Throws NotACover when the input does not cover.
std::vector<int> wool_grossman(const Instance& inst, const std::vector<int>& cover);

// Trace of recursive minimization, one level per recursion step: the cover
// being minimized and the still-uncovered universe at that level, both in
// the instance's numbering.
struct MinimizeChain {
  struct Level {
    std::vector<int> sets;
    std::vector<int> elements;
  };
  std::vector<Level> levels;
};

// Re-runs the greedy engine on the instance restricted to the cover's sets,
// keeps the last set the re-run selects (it is forced: the rest of the
// re-run's cover no longer covers its private elements), removes what it
// covers, and recurses on the remainder. The engine config is used for the
// inner re-runs with minimize_result stripped. Output is sorted, is a
// subset of the input, covers, costs no more, and is minimal (no proper
// subset of it covers). Throws NotACover on invalid input.
std::vector<int> recursive_minimize(const Instance& inst, const std::vector<int>& cover,
                                    const EngineConfig& cfg, MinimizeChain* chain = nullptr);

// True when chosen covers and no proper subset of it does (equivalently,
// every chosen set covers some element no other chosen set covers).
bool is_minimal_cover(const Instance& inst, const std::vector<int>& chosen);

}  // namespace coverpack
