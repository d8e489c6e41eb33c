#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coverpack/greedy.hpp"
#include "coverpack/io.hpp"

namespace coverpack {

struct AlgorithmSpec {
  std::string name;
  EngineConfig config;
  int runs = 1;  // best-of-k: run seeds config.rng_seed .. +runs-1, keep the best
};

struct ExperimentSpec {
  ProblemKind kind = ProblemKind::cover;
  DistributionSpec distribution;  // distribution.seed is the base seed
  int instances = 1;              // instance i is drawn with seed base+i
  std::vector<AlgorithmSpec> algorithms;
};

// Parses the flat key = value experiment format ('#' starts a comment):
//   kind = cover | pack
//   m = 1000        n = 200        rho = 0.02
//   costs = unweighted | discrete:a,b | continuous:a,b
//   seed = 1        instances = 20
//   algorithm = NAME alg=std|newc|stdp|root|mis|newp [runs=K] [gamma=G]
//               [epsilon=E] [seed=S] [preprocess=basic|subsume|none]
//               [minimize=none|wg|recursive] [tie=T]
// The algorithm line may repeat; names must be unique and families must
// match the experiment's kind. Errors are ParseError with the line number.
ExperimentSpec parse_experiment_spec(std::istream& in);

struct AlgorithmSummary {
  std::string name;
  int runs = 1;
  // Share of instances on which the algorithm attains the best objective
  // among all algorithms (ties credit every attainer), and the mean ratio
  // to the per-instance best (>= 1; cover divides by the best, packing
  // divides the best by the objective). _pre is before cover minimization.
  double best_share_pre = 0.0;
  double quality_pre = 1.0;
  double best_share_post = 0.0;
  double quality_post = 1.0;
  double mean_steps = 0.0;
  double total_seconds = 0.0;  // never written to the CSVs
};

struct ExperimentResult {
  ProblemKind kind = ProblemKind::cover;
  std::vector<std::string> algorithm_names;
  // Indexed [instance][algorithm]: best objective over the algorithm's
  // runs, before and after minimization (identical for packing and for
  // cover algorithms that do not minimize).
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> post;
  std::vector<AlgorithmSummary> summary;
};

// Draws the instances and runs every algorithm on each. Deterministic for a
// fixed spec: instance i uses the distribution seed + i, run j of an
// algorithm uses its configured seed + j.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// results.csv: one row per algorithm (shares, mean quality, mean steps).
// Timing is deliberately excluded so outputs are byte-for-byte reproducible.
void write_summary_csv(const ExperimentResult& res, std::ostream& out);

// per_instance.csv: one row per instance with each algorithm's pre and post
// objectives.
void write_per_instance_csv(const ExperimentResult& res, std::ostream& out);

// Maps the CLI algorithm names std, newc, stdp, root, mis, newp.
// Throws ParseError(0,...) on an unknown name.
ValuationFamily family_from_name(const std::string& name);

}  // namespace coverpack
