#pragma once

#include <utility>
#include <vector>

#include "coverpack/model.hpp"

namespace coverpack {

// Record of one reduction pass. All indices are in the numbering of the
// instance the pass was given; the renumber maps translate the reduced
// instance's indices back (new index -> given index) and are injective.
struct PreprocessTrace {
  std::vector<int> forced_in;        // sets any optimal solution must take
  std::vector<int> forced_out;       // sets no optimal solution needs
  std::vector<int> removed_elements;
  std::vector<int> set_renumber;     // reduced set index -> given set index
  std::vector<int> element_renumber; // reduced element index -> given index
};

// Degeneracy rules, applied round-robin to a fixed point:
//   non-positive cost  cover: force in, strip its elements / packing: force out
//   empty set          cover: force out / packing: force in
//   degree-0 element   cover: Infeasible (carries the element) / packing: drop
//   degree-1 element   cover: force its one set / packing: drop the element
// The result has all costs positive, no empty sets, and every element in at
// least two sets. Optimal solutions are preserved exactly: forced_in plus an
// optimal solution of the reduced instance, mapped back, is optimal.
std::pair<Instance, PreprocessTrace> basic_preprocess(const Instance& inst, ProblemKind kind);

// Dominance rules, applied alternately to a fixed point:
//   set i inside set j at no smaller cost   cover: drop i / packing: drop j
//     (equal set, equal cost: drop the higher index)
//   element e hit by a subset of what e' is hit by
//     cover: drop e' (covering e covers e' for free) / packing: drop e
// Expects a basic-preprocessed instance; preserves some optimal solution
// (not necessarily all of them).
std::pair<Instance, PreprocessTrace> subsumption_preprocess(const Instance& inst,
                                                            ProblemKind kind);

// Splits into bipartite connected components. Components that contain a set
// come first, ordered by their smallest set index in the given instance;
// set-free components (isolated elements) follow, one per element, in
// element order. The traces carry only the renumber maps.
std::vector<std::pair<Instance, PreprocessTrace>> split_components(const Instance& inst);

// Packing-only tightening: adds element e to set i whenever S_i already
// intersects every set containing e, which leaves the packing constraints'
// feasible sets unchanged but strengthens dominance. Runs to a fixed point
// (scanning elements, then candidate sets, in increasing index order) and
// finishes with a packing subsumption pass. Opt-in; never run by default.
std::pair<Instance, PreprocessTrace> strengthen_packing_constraints(const Instance& inst);

// Maps a solution of the reduced instance back to the given instance's
// numbering, including the trace's forced_in sets. Output is sorted.
std::vector<int> map_to_original(const PreprocessTrace& trace,
                                 const std::vector<int>& reduced_chosen);

// Composes two traces from consecutive passes (first, then second on the
// first's output) into one trace in the original numbering.
PreprocessTrace compose_traces(const PreprocessTrace& first, const PreprocessTrace& second);

}  // namespace coverpack
