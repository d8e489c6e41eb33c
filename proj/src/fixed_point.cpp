#include "coverpack/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coverpack/rng.hpp"

namespace coverpack {

namespace {

void check_diagonal(const Vector& diag) {
  for (int i = 0; i < diag.size(); ++i)
    if (!(diag[i] > 0.0))
      throw InvalidOperator("operator diagonal must be strictly positive (row " +
                            std::to_string(i) + ")");
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.blend_weight > 0.0) || !(cfg.blend_weight < 1.0))
    throw InvalidOperator("blend_weight must lie strictly inside (0,1)");
  if (!(cfg.tolerance > 0.0)) throw InvalidOperator("tolerance must be positive");
  if (cfg.max_iterations < 0) throw InvalidOperator("max_iterations must be non-negative");
}

Vector starting_point(const FixedPointOperator& op, const std::optional<Vector>& start) {
  if (!start) return op.row_sums().array().pow(-0.5).matrix();
  if (start->size() != op.dim())
    throw NonPositiveStart("start vector has wrong dimension");
  for (int i = 0; i < start->size(); ++i)
    if (!((*start)[i] > 0.0)) throw NonPositiveStart("start vector must be strictly positive");
  return *start;
}

int iteration_budget(const SolverConfig& cfg) {
  int budget = cfg.max_iterations;
  if (cfg.iteration_cap) budget = std::min(budget, *cfg.iteration_cap);
  return budget;
}

double residual_of(const FixedPointOperator& op, const Vector& v) {
  if (v.size() == 0) return 0.0;
  return (v.array() * op.apply(v).array() - 1.0).abs().maxCoeff();
}

FixedPointResult trivial_result() {
  FixedPointResult res;
  res.v = Vector(0);
  res.converged = true;
  res.reason = StopReason::step_tolerance;
  return res;
}

// Gap between the largest and second-largest component.
double leader_gap(const Vector& v) {
  double best = -std::numeric_limits<double>::infinity();
  double second = best;
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > best) {
      second = best;
      best = v[i];
    } else if (v[i] > second) {
      second = v[i];
    }
  }
  return best - second;
}

FixedPointResult finish(const FixedPointOperator& op, Vector v, int iterations,
                        StopReason reason, double tolerance) {
  FixedPointResult res;
  res.v = std::move(v);
  res.iterations = iterations;
  res.residual = residual_of(op, res.v);
  res.reason = reason;
  res.converged = reason == StopReason::step_tolerance && res.residual <= 10.0 * tolerance;
  return res;
}

}  // namespace

FixedPointOperator::FixedPointOperator(Matrix dense) {
  if (dense.rows() != dense.cols()) throw InvalidOperator("operator matrix must be square");
  if (dense.size() > 0 && dense.minCoeff() < 0.0)
    throw InvalidOperator("operator matrix must be non-negative");
  dim_ = static_cast<int>(dense.rows());
  diagonal_ = dense.diagonal();
  check_diagonal(diagonal_);
  row_sums_ = dense.rowwise().sum();
  dense_ = std::make_shared<const Matrix>(std::move(dense));
  apply_ = [m = dense_](const Vector& x) { return *m * x; };
  off_diagonal_ = [m = dense_](int i, const Vector& v) {
    return m->row(i).dot(v) - (*m)(i, i) * v[i];
  };
}

FixedPointOperator::FixedPointOperator(int dim, ApplyFn apply, Vector diagonal, RowFn off_diagonal)
    : dim_(dim),
      apply_(std::move(apply)),
      diagonal_(std::move(diagonal)),
      off_diagonal_(std::move(off_diagonal)) {
  if (dim_ < 0) throw InvalidOperator("operator dimension must be non-negative");
  if (diagonal_.size() != dim_) throw InvalidOperator("diagonal has wrong dimension");
  check_diagonal(diagonal_);
  row_sums_ = dim_ == 0 ? Vector(0) : apply_(Vector::Ones(dim_));
}

double FixedPointOperator::off_diagonal_dot(int i, const Vector& v) const {
  if (!off_diagonal_)
    throw InvalidOperator("operator has no row access for the in-place sweep");
  return off_diagonal_(i, v);
}

FixedPointResult solve_blended(const FixedPointOperator& op, const SolverConfig& cfg,
                               const std::optional<Vector>& start, const GapMonitor& monitor) {
  check_config(cfg);
  if (op.dim() == 0) return trivial_result();
  Vector v = starting_point(op, start);
  const double w = cfg.blend_weight;
  const int budget = iteration_budget(cfg);
  Vector watched;
  if (cfg.early_stop == EarlyStop::gap) watched = monitor ? monitor(v) : v;
  int iterations = 0;
  StopReason reason = StopReason::budget;
  for (int k = 1; k <= budget; ++k) {
    Vector next = (1.0 - w) * v + w * op.apply(v).cwiseInverse();
    const double step = (next - v).cwiseAbs().maxCoeff();
    v = std::move(next);
    iterations = k;
    if (step < cfg.tolerance) {
      reason = StopReason::step_tolerance;
      break;
    }
    if (cfg.early_stop == EarlyStop::gap) {
      Vector now = monitor ? monitor(v) : v;
      if (now.size() >= 2 && (now - watched).lpNorm<1>() < leader_gap(now)) {
        reason = StopReason::gap;
        break;
      }
      watched = std::move(now);
    }
  }
  return finish(op, std::move(v), iterations, reason, cfg.tolerance);
}

FixedPointResult solve_quadratic(const FixedPointOperator& op, const SolverConfig& cfg,
                                 const std::optional<Vector>& start, bool in_place) {
  check_config(cfg);
  if (op.dim() == 0) return trivial_result();
  if (in_place && !op.has_row_access())
    throw InvalidOperator("in-place quadratic sweep requires row access");
  Vector v = starting_point(op, start);
  const Vector& diag = op.diagonal();
  const int budget = iteration_budget(cfg);
  int iterations = 0;
  StopReason reason = StopReason::budget;
  for (int k = 1; k <= budget; ++k) {
    double step = 0.0;
    if (in_place) {
      for (int i = 0; i < op.dim(); ++i) {
        const double s = op.off_diagonal_dot(i, v) / diag[i];
        const double updated = 0.5 * (std::sqrt(s * s + 4.0 / diag[i]) - s);
        step = std::max(step, std::abs(updated - v[i]));
        v[i] = updated;
      }
    } else {
      const Vector s = (op.apply(v) - diag.cwiseProduct(v)).cwiseQuotient(diag);
      const Vector next =
          0.5 * ((s.array().square() + 4.0 / diag.array()).sqrt() - s.array()).matrix();
      step = (next - v).cwiseAbs().maxCoeff();
      v = next;
    }
    iterations = k;
    if (step < cfg.tolerance) {
      reason = StopReason::step_tolerance;
      break;
    }
  }
  return finish(op, std::move(v), iterations, reason, cfg.tolerance);
}

NaiveTrajectory naive_iterate(const FixedPointOperator& op, const Vector& start, int steps) {
  if (start.size() != op.dim()) throw NonPositiveStart("start vector has wrong dimension");
  for (int i = 0; i < start.size(); ++i)
    if (!(start[i] > 0.0)) throw NonPositiveStart("start vector must be strictly positive");
  NaiveTrajectory traj;
  traj.iterates.reserve(static_cast<std::size_t>(steps) + 1);
  traj.iterates.push_back(start);
  for (int k = 0; k < steps; ++k)
    traj.iterates.push_back(op.apply(traj.iterates.back()).cwiseInverse());
  if (traj.iterates.size() >= 3) {
    const auto last = traj.iterates.size() - 1;
    const double two_step =
        (traj.iterates[last] - traj.iterates[last - 2]).cwiseAbs().maxCoeff();
    const double one_step =
        (traj.iterates[last] - traj.iterates[last - 1]).cwiseAbs().maxCoeff();
    traj.cycle_suspected = two_step < 1e-9 && one_step > 1e-3;
  }
  return traj;
}

std::optional<Vector> closed_form(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
  const int n = static_cast<int>(m.rows());
  if (m.minCoeff() < 0.0) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (!(m(i, i) > 0.0)) return std::nullopt;

  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && m(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) return m.diagonal().array().pow(-0.5).matrix().eval();

  const Vector sums = m.rowwise().sum();
  if ((sums.array() == sums[0]).all())
    return Vector::Constant(n, std::pow(sums[0], -0.5)).eval();

  // Identical columns, all entries positive: row i is constant u_i.
  bool constant_rows = m.minCoeff() > 0.0;
  for (int i = 0; i < n && constant_rows; ++i)
    for (int j = 1; j < n; ++j)
      if (m(i, j) != m(i, 0)) {
        constant_rows = false;
        break;
      }
  if (constant_rows) {
    const Vector u = m.col(0);
    const double s = std::sqrt(u.cwiseInverse().sum());
    return (s * u).cwiseInverse().eval();
  }
  return std::nullopt;
}

std::pair<Vector, Vector> existence_bounds(const FixedPointOperator& op) {
  Vector upper = op.diagonal().array().pow(-0.5).matrix();
  Vector lower = op.dim() == 0 ? Vector(0) : op.apply(upper).cwiseInverse().eval();
  return {std::move(lower), std::move(upper)};
}

UniquenessReport uniqueness_probe(const FixedPointOperator& op, const SolverConfig& cfg,
                                  int trials, std::uint64_t seed) {
  UniquenessReport report;
  report.trials = trials;
  Rng rng(seed);
  std::vector<Vector> converged;
  for (int t = 0; t < trials; ++t) {
    Vector start(op.dim());
    for (int i = 0; i < op.dim(); ++i) start[i] = rng.uniform(0.1, 10.0);
    const FixedPointResult res = solve_blended(op, cfg, start);
    if (res.converged)
      converged.push_back(res.v);
    else
      ++report.nonconverged;
  }
  for (std::size_t a = 0; a < converged.size(); ++a)
    for (std::size_t b = a + 1; b < converged.size(); ++b)
      report.max_disagreement = std::max(
          report.max_disagreement, (converged[a] - converged[b]).cwiseAbs().maxCoeff());
  report.unique = !converged.empty() && report.max_disagreement <= 100.0 * cfg.tolerance;

  if (!converged.empty() && op.dim() > 0) {
    const Vector& v = converged.front();
    report.min_k = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 100; ++t) {
      Vector u(op.dim());
      for (int i = 0; i < op.dim(); ++i) u[i] = rng.uniform(0.1, 10.0);
      const double k = (u - v).dot(op.apply(u) - u.cwiseInverse());
      report.min_k = std::min(report.min_k, k);
      if (k <= 0.0) ++report.nonpositive_k;
    }
  }
  return report;
}

}  // namespace coverpack
