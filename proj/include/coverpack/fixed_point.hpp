#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "coverpack/errors.hpp"

namespace coverpack {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Linear map x -> M x for a non-negative square matrix M with strictly
// positive diagonal, either stored densely or supplied matrix free. The
// solvers below look for the positive vector v with M v = v^{.-1}
// (componentwise reciprocal), i.e. a fixed point of F(v) = (M v)^{.-1}.
class FixedPointOperator {
public:
  using ApplyFn = std::function<Vector(const Vector&)>;
  // Off-diagonal row product sum_{j != i} M_ij v_j, needed by the in-place
  // quadratic sweep. Derived automatically for dense operators.
  using RowFn = std::function<double(int, const Vector&)>;

  // Dense constructor. Rejects non-square input, negative entries, and a
  // zero or negative diagonal with InvalidOperator.
  explicit FixedPointOperator(Matrix dense);

  // Matrix-free constructor. Only the diagonal can be validated here; the
  // caller guarantees the implied matrix is non-negative. off_diagonal may
  // be empty, which disables the in-place quadratic sweep.
  FixedPointOperator(int dim, ApplyFn apply, Vector diagonal, RowFn off_diagonal = nullptr);

  int dim() const { return dim_; }
  Vector apply(const Vector& x) const { return apply_(x); }
  const Vector& diagonal() const { return diagonal_; }
  const Vector& row_sums() const { return row_sums_; }

  bool has_row_access() const { return static_cast<bool>(off_diagonal_); }
  double off_diagonal_dot(int i, const Vector& v) const;

  // The stored matrix, or nullptr for matrix-free operators.
  const Matrix* dense() const { return dense_.get(); }

private:
  int dim_ = 0;
  ApplyFn apply_;
  Vector diagonal_;
  Vector row_sums_;
  RowFn off_diagonal_;
  std::shared_ptr<const Matrix> dense_;  // shared so copies stay valid
};

enum class EarlyStop { off, gap };

enum class StopReason { step_tolerance, gap, budget };

struct SolverConfig {
  double tolerance = 1e-12;     // max-norm step size that counts as converged
  int max_iterations = 200;
  double blend_weight = 2.0 / 3.0;  // must lie strictly inside (0,1)
  EarlyStop early_stop = EarlyStop::off;
  // Optional hard iteration cap below max_iterations, used by the greedy
  // engine to budget inner solves.
  std::optional<int> iteration_cap;
};

struct FixedPointResult {
  Vector v;
  int iterations = 0;
  double residual = 0.0;  // max_i |v_i (M v)_i - 1|
  bool converged = false;
  StopReason reason = StopReason::budget;
};

// Maps an iterate to the derived valuation whose leader gap the early stop
// watches. Identity when absent. Stopping fires once the L1 step of the
// monitored vector falls below the gap between its two largest components:
// past that point further iterations cannot change the argmax.
using GapMonitor = std::function<Vector(const Vector&)>;

// Damped iteration v <- (1-w) v + w (M v)^{.-1} from the default start
// (M 1)^{.-1/2}, or from `start` (all components must be positive, else
// NonPositiveStart). Stops on max-norm step < tolerance, on the gap rule
// when enabled, or on the iteration budget. converged requires a tolerance
// stop and a verified residual <= 10 * tolerance; a result that stopped for
// any other reason is returned as data, never thrown.
FixedPointResult solve_blended(const FixedPointOperator& op, const SolverConfig& cfg = {},
                               const std::optional<Vector>& start = {},
                               const GapMonitor& monitor = nullptr);

// Coordinate update solving each row's scalar quadratic exactly:
//   v_i = ( sqrt(s_i^2 + 4/M_ii) - s_i ) / 2,  s_i = sum_{j!=i} M_ij v_j / M_ii.
// in_place=true sweeps rows in index order reusing fresh values
// (Gauss-Seidel, requires row access); in_place=false updates every row
// from the previous iterate (Jacobi).
FixedPointResult solve_quadratic(const FixedPointOperator& op, const SolverConfig& cfg = {},
                                 const std::optional<Vector>& start = {}, bool in_place = true);

// Raw undamped iteration v <- (M v)^{.-1}, kept as a diagnostic: it usually
// falls into a period-2 cycle instead of converging. iterates[k] is the
// k-th iterate, with iterates[0] == start.
struct NaiveTrajectory {
  std::vector<Vector> iterates;
  // Set when the tail alternates: the two-step change is below 1e-9 in the
  // max norm while the one-step change stays above 1e-3.
  bool cycle_suspected = false;
};
NaiveTrajectory naive_iterate(const FixedPointOperator& op, const Vector& start, int steps);

// Closed-form solution for three special dense shapes: diagonal matrices
// (v = diag^{.-1/2}), matrices with equal row sums s (v = s^{-1/2} 1), and
// all-positive matrices with identical columns u (v = (s u)^{.-1} with
// s = sqrt(sum_j 1/u_j)). Returns an empty optional when no case applies;
// absence is not an error.
std::optional<Vector> closed_form(const Matrix& m);

// Componentwise bracket for any positive solution: upper = diag(M)^{.-1/2}
// and lower = (M upper)^{.-1}. lower <= upper holds componentwise.
std::pair<Vector, Vector> existence_bounds(const FixedPointOperator& op);

struct UniquenessReport {
  bool unique = false;        // every converged trial landed on the same point
  int trials = 0;
  int nonconverged = 0;
  double max_disagreement = 0.0;  // largest max-norm gap between converged results
  // Samples of K(u) = (u - v)^T (M u - u^{.-1}) at random positive u; K > 0
  // everywhere away from v is the monotonicity certificate for uniqueness.
  double min_k = 0.0;
  int nonpositive_k = 0;
};

// Solves from `trials` random positive starts (components uniform in
// [0.1, 10)) and reports whether all converged results agree within
// 100 * cfg.tolerance in the max norm, plus the K(u) sample summary over
// 100 random probes.
UniquenessReport uniqueness_probe(const FixedPointOperator& op, const SolverConfig& cfg,
                                  int trials, std::uint64_t seed);

}  // namespace coverpack
