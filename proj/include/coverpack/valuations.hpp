#pragma once

#include <optional>

#include "coverpack/fixed_point.hpp"
#include "coverpack/model.hpp"

namespace coverpack {

// Set valuation families. Greedy selection always takes an argmax, so cover
// valuations measure value per cost (bigger is better to add) and packing
// valuations measure weight per conflict.
enum class ValuationFamily {
  std_cover,   // |S_i| / c_i
  new_cover,   // (sum of fixed-point element difficulties in S_i) / c_i
  std_pack,    // c_i / |S_i|
  root_pack,   // c_i / sqrt(|S_i|)
  mis_pack,    // c_i / (deg_i - 1), +inf for sets intersecting nothing else
  new_pack,    // fixed point of v = C (B v)^{.-1} over the conflict graph
};

struct ValuationSpec {
  ValuationFamily family = ValuationFamily::std_cover;
  double gamma = -3.0;    // new_cover cost exponent (costs enter as c^(gamma-1))
  double epsilon = 0.0;   // new_pack diagonal damping, in [0,1); 0 keeps the
                          // plain self-neighbour diagonal
  SolverConfig solver;
};

struct ValuationResult {
  Vector v;                      // one value per set
  std::optional<Vector> d;       // new_cover's element difficulties
  int iterations = 0;            // inner fixed-point iterations (0 if closed form)
  // False only when an inner fixed-point solve exhausted its budget short
  // of tolerance. A gap early stop counts as converged: by design it fires
  // once more iterations cannot change the selection.
  bool converged = true;
  bool warm_start_used = false;
};

// Evaluates one family on a preprocessed instance (positive costs, no empty
// sets for the size-based families). warm_start, when given, must be a
// positive vector over the family's fixed-point unknowns: element
// difficulties d for new_cover, set values v for new_pack; other families
// ignore it. A non-converged inner solve is reported in the result, never
// thrown.
ValuationResult evaluate(const Instance& inst, const ValuationSpec& spec,
                         const std::optional<Vector>& warm_start = {});

// Conflict rows R_i: the sets intersecting set i, self included when S_i is
// non-empty. Sorted.
std::vector<std::vector<int>> intersecting_sets(const Instance& inst);

// The new_cover difficulty operator d -> A C^(gamma-1) A^T d over elements:
// two sparse passes, per set t_s = c_s^(gamma-1) * sum_{e in S_s} d_e, then
// per element sum over its sets of t_s. Exposed for diagnostics and tests.
FixedPointOperator cover_difficulty_operator(const Instance& inst, double gamma);

// The new_pack operator v -> C^{-1} B v with B the 0/1 conflict matrix,
// its diagonal replaced by epsilon when epsilon > 0.
FixedPointOperator pack_conflict_operator(const Instance& inst, double epsilon);

}  // namespace coverpack
