#pragma once

#include <vector>

#include "coverpack/errors.hpp"

namespace coverpack {

enum class ProblemKind { cover, packing };

// Sparse incidence view of a weighted Set Cover / Set Packing instance.
// sets[i] lists the elements of set i and neighbourhoods[e] lists the sets
// containing element e; both directions are sorted, duplicate free, and
// mutually consistent (e is in sets[i] exactly when i is in
// neighbourhoods[e]). Indices are 0-based everywhere inside the library;
// 1-based numbering appears only at file-format boundaries.
//
// Instances are value types and are treated as immutable after
// construction: every reduction builds a new Instance plus a trace mapping
// it back, rather than mutating in place.
struct Instance {
  int num_sets = 0;
  int num_elements = 0;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> neighbourhoods;
  std::vector<double> costs;
};

struct Solution {
  ProblemKind kind = ProblemKind::cover;
  std::vector<int> chosen;  // sorted set indices
  double objective = 0.0;   // costs of chosen, summed in ascending index order
};

// Builds a consistent Instance from raw set lists. Element lists may arrive
// unsorted or with duplicates and are normalized. The universe size is
// 1 + the largest element mentioned (0 when every set is empty) unless an
// explicit num_elements is given. Throws InvalidInstance on negative
// indices, a costs/sets length mismatch, or an element at or beyond an
// explicit num_elements.
Instance build_instance(std::vector<std::vector<int>> sets, std::vector<double> costs);
Instance build_instance(std::vector<std::vector<int>> sets, std::vector<double> costs,
                        int num_elements);

// Recomputes neighbourhoods from sets. Used by builders and parsers.
std::vector<std::vector<int>> neighbourhoods_from_sets(const std::vector<std::vector<int>>& sets,
                                                       int num_elements);

// Checks the dual-adjacency and sortedness invariants; throws
// InvalidInstance when violated. Cheap enough to run in tests and parsers.
void validate_instance(const Instance& inst);

// True when the union of the chosen sets is the whole universe.
bool is_cover(const Instance& inst, const std::vector<int>& chosen);

// True when the chosen sets are pairwise disjoint.
bool is_packing(const Instance& inst, const std::vector<int>& chosen);

// Sum of the chosen sets' costs in ascending index order. The fixed order
// makes reported objectives exactly reproducible.
double solution_cost(const Instance& inst, const std::vector<int>& chosen);

// Normalizes chosen (sorts, checks range) and attaches the exact objective.
Solution make_solution(const Instance& inst, ProblemKind kind, std::vector<int> chosen);

// Fraction of ones in the incidence matrix, sum_i |S_i| / (m*n).
// Throws InvalidInstance when the instance has no sets or no elements.
double density(const Instance& inst);

}  // namespace coverpack
