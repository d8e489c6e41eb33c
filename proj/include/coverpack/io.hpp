#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coverpack/model.hpp"

namespace coverpack {

// Cost model for generated instances: every set costs 1, or an integer
// drawn uniformly from {a,...,b} with 0 < a < b, or a real drawn uniformly
// from [a,b) with a < b.
struct CostModel {
  enum class Kind { unweighted, discrete, continuous };
  Kind kind = Kind::unweighted;
  double a = 0.0;
  double b = 0.0;
};

// Random instance family D(m, n, rho, costs): m sets over n elements, each
// (set, element) membership an independent Bernoulli(rho).
struct DistributionSpec {
  int m = 0;
  int n = 0;
  double rho = 0.0;  // strictly inside (0,1)
  CostModel cost_model;
  std::uint64_t seed = 0;
};

// Pre-repair statistics, exposed for distribution tests.
struct GenStats {
  long long pre_repair_memberships = 0;
  std::vector<int> pre_repair_degrees;
};

// Draws an instance from the spec's distribution. The stream layout is
// fixed so seeds are portable contracts: costs first (one draw per set, in
// set order; the unweighted model draws nothing), then memberships (set
// major, element minor, one Bernoulli draw per pair, always consumed), then
// degree repair (elements in increasing order, each drawing uniform set
// indices with replacement, skipping sets already containing the element,
// until the element is in at least two sets). Requires m >= 2.
Instance generate(const DistributionSpec& spec, GenStats* stats = nullptr);

// Adversarial cover family: n singleton sets {i} with cost 1/(i+1) plus one
// set covering everything at cost 1+eps. The standard greedy pays the n-th
// harmonic number while the optimum is 1+eps. Requires n >= 1, eps > 0.
Instance hard_instance(int n, double eps);

// Native text format:
//   m n
//   c_i k e_1 ... e_k      (one line per set, 0-based sorted elements)
// Costs are printed with just enough digits to round-trip exactly.
Instance parse_native(std::istream& in);
void write_native(const Instance& inst, std::ostream& out);

// OR-Library set covering format: rows cols, then cols costs, then for each
// row its covering-set count and that many 1-based column indices. Rows are
// elements, columns are sets. Tokens may be wrapped across lines freely.
Instance parse_orlib(std::istream& in);
void write_orlib(const Instance& inst, std::ostream& out);

// Shortest decimal form of x that parses back to exactly x.
std::string format_exact(double x);

// Parses "unweighted", "discrete:a,b", or "continuous:a,b".
// Throws ParseError (line 0) on anything else.
CostModel parse_cost_model(const std::string& text);

}  // namespace coverpack
