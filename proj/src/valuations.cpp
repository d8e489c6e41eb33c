#include "coverpack/valuations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace coverpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector size_ratio(const Instance& inst, bool value_per_cost, double size_exponent) {
  Vector v(inst.num_sets);
  for (int i = 0; i < inst.num_sets; ++i) {
    const double size = std::pow(static_cast<double>(inst.sets[i].size()), size_exponent);
    v[i] = value_per_cost ? size / inst.costs[i] : inst.costs[i] / size;
  }
  return v;
}

struct CoverOpData {
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> neighbourhoods;
  std::vector<double> set_weight;  // c_s^(gamma-1)
};

struct PackOpData {
  std::vector<std::vector<int>> rows;
  std::vector<double> costs;
  double self_excess = 0.0;  // 1 - epsilon when epsilon > 0, else 0
};

ValuationResult eval_new_cover(const Instance& inst, const ValuationSpec& spec,
                               const std::optional<Vector>& warm) {
  const FixedPointOperator op = cover_difficulty_operator(inst, spec.gamma);
  const auto to_valuation = [&inst](const Vector& d) {
    Vector v(inst.num_sets);
    for (int i = 0; i < inst.num_sets; ++i) {
      double sum = 0.0;
      for (int e : inst.sets[i]) sum += d[e];
      v[i] = sum / inst.costs[i];
    }
    return v;
  };
  const FixedPointResult res = solve_blended(op, spec.solver, warm, to_valuation);
  ValuationResult out;
  out.v = to_valuation(res.v);
  out.d = res.v;
  out.iterations = res.iterations;
  out.converged = res.converged || res.reason == StopReason::gap;
  out.warm_start_used = warm.has_value();
  return out;
}

ValuationResult eval_new_pack(const Instance& inst, const ValuationSpec& spec,
                              const std::optional<Vector>& warm) {
  const FixedPointOperator op = pack_conflict_operator(inst, spec.epsilon);
  const FixedPointResult res = solve_quadratic(op, spec.solver, warm, true);
  ValuationResult out;
  out.v = res.v;
  out.iterations = res.iterations;
  out.converged = res.converged;
  out.warm_start_used = warm.has_value();
  return out;
}

}  // namespace

std::vector<std::vector<int>> intersecting_sets(const Instance& inst) {
  std::vector<std::vector<int>> rows(inst.num_sets);
  for (int i = 0; i < inst.num_sets; ++i) {
    auto& row = rows[i];
    for (int e : inst.sets[i])
      row.insert(row.end(), inst.neighbourhoods[e].begin(), inst.neighbourhoods[e].end());
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return rows;
}

FixedPointOperator cover_difficulty_operator(const Instance& inst, double gamma) {
  auto data = std::make_shared<CoverOpData>();
  data->sets = inst.sets;
  data->neighbourhoods = inst.neighbourhoods;
  data->set_weight.resize(inst.num_sets);
  for (int i = 0; i < inst.num_sets; ++i)
    data->set_weight[i] = std::pow(inst.costs[i], gamma - 1.0);
  const int n = inst.num_elements;
  Vector diag(n);
  for (int e = 0; e < n; ++e) {
    double sum = 0.0;
    for (int s : inst.neighbourhoods[e]) sum += data->set_weight[s];
    diag[e] = sum;
  }
  auto apply = [data, n](const Vector& d) {
    Vector out = Vector::Zero(n);
    for (int s = 0; s < static_cast<int>(data->sets.size()); ++s) {
      double t = 0.0;
      for (int e : data->sets[s]) t += d[e];
      t *= data->set_weight[s];
      for (int e : data->sets[s]) out[e] += t;
    }
    return out;
  };
  auto off_diagonal = [data, diag](int e, const Vector& d) {
    double sum = 0.0;
    for (int s : data->neighbourhoods[e]) {
      double t = 0.0;
      for (int e2 : data->sets[s]) t += d[e2];
      sum += data->set_weight[s] * t;
    }
    return sum - diag[e] * d[e];
  };
  return FixedPointOperator(n, std::move(apply), std::move(diag), std::move(off_diagonal));
}

FixedPointOperator pack_conflict_operator(const Instance& inst, double epsilon) {
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw InvalidOperator("epsilon must lie in [0,1)");
  auto data = std::make_shared<PackOpData>();
  data->rows = intersecting_sets(inst);
  data->costs = inst.costs;
  data->self_excess = epsilon > 0.0 ? 1.0 - epsilon : 0.0;
  const int m = inst.num_sets;
  Vector diag(m);
  const double self_weight = epsilon > 0.0 ? epsilon : 1.0;
  for (int i = 0; i < m; ++i) diag[i] = self_weight / inst.costs[i];
  auto apply = [data, m](const Vector& v) {
    Vector out(m);
    for (int i = 0; i < m; ++i) {
      double sum = 0.0;
      for (int j : data->rows[i]) sum += v[j];
      out[i] = (sum - data->self_excess * v[i]) / data->costs[i];
    }
    return out;
  };
  auto off_diagonal = [data](int i, const Vector& v) {
    double sum = 0.0;
    for (int j : data->rows[i]) sum += v[j];
    return (sum - v[i]) / data->costs[i];
  };
  return FixedPointOperator(m, std::move(apply), std::move(diag), std::move(off_diagonal));
}

ValuationResult evaluate(const Instance& inst, const ValuationSpec& spec,
                         const std::optional<Vector>& warm_start) {
  ValuationResult out;
  switch (spec.family) {
    case ValuationFamily::std_cover:
      out.v = size_ratio(inst, true, 1.0);
      return out;
    case ValuationFamily::new_cover:
      return eval_new_cover(inst, spec, warm_start);
    case ValuationFamily::std_pack:
      out.v = size_ratio(inst, false, 1.0);
      return out;
    case ValuationFamily::root_pack:
      out.v = size_ratio(inst, false, 0.5);
      return out;
    case ValuationFamily::mis_pack: {
      const auto rows = intersecting_sets(inst);
      out.v.resize(inst.num_sets);
      for (int i = 0; i < inst.num_sets; ++i) {
        const auto others = static_cast<double>(rows[i].size()) - 1.0;
        out.v[i] = others > 0.0 ? inst.costs[i] / others : kInf;
      }
      return out;
    }
    case ValuationFamily::new_pack:
      return eval_new_pack(inst, spec, warm_start);
  }
  throw InvalidInstance("unknown valuation family");
}

}  // namespace coverpack
