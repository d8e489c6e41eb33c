#include "coverpack/model.hpp"

#include <algorithm>
#include <string>

namespace coverpack {

namespace {

Instance build_checked(std::vector<std::vector<int>> sets, std::vector<double> costs,
                       int num_elements, bool derive_universe) {
  if (sets.size() != costs.size())
    throw InvalidInstance("costs and sets must have the same length");
  int max_element = -1;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty()) {
      if (s.front() < 0) throw InvalidInstance("negative element index");
      max_element = std::max(max_element, s.back());
    }
  }
  if (derive_universe) {
    num_elements = max_element + 1;
  } else if (max_element >= num_elements) {
    throw InvalidInstance("element index " + std::to_string(max_element) +
                          " outside universe of size " + std::to_string(num_elements));
  }
  Instance inst;
  inst.num_sets = static_cast<int>(sets.size());
  inst.num_elements = num_elements;
  inst.sets = std::move(sets);
  inst.costs = std::move(costs);
  inst.neighbourhoods = neighbourhoods_from_sets(inst.sets, inst.num_elements);
  return inst;
}

}  // namespace

Instance build_instance(std::vector<std::vector<int>> sets, std::vector<double> costs) {
  return build_checked(std::move(sets), std::move(costs), 0, true);
}

Instance build_instance(std::vector<std::vector<int>> sets, std::vector<double> costs,
                        int num_elements) {
  if (num_elements < 0) throw InvalidInstance("negative universe size");
  return build_checked(std::move(sets), std::move(costs), num_elements, false);
}

std::vector<std::vector<int>> neighbourhoods_from_sets(const std::vector<std::vector<int>>& sets,
                                                       int num_elements) {
  std::vector<std::vector<int>> nbh(num_elements);
  for (int i = 0; i < static_cast<int>(sets.size()); ++i)
    for (int e : sets[i]) nbh[e].push_back(i);
  return nbh;
}

void validate_instance(const Instance& inst) {
  if (inst.num_sets != static_cast<int>(inst.sets.size()) ||
      inst.num_sets != static_cast<int>(inst.costs.size()) ||
      inst.num_elements != static_cast<int>(inst.neighbourhoods.size()))
    throw InvalidInstance("size fields disagree with stored data");
  for (const auto& s : inst.sets) {
    if (!std::is_sorted(s.begin(), s.end())) throw InvalidInstance("unsorted set");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InvalidInstance("duplicate element in set");
    if (!s.empty() && (s.front() < 0 || s.back() >= inst.num_elements))
      throw InvalidInstance("element index out of range");
  }
  if (inst.neighbourhoods != neighbourhoods_from_sets(inst.sets, inst.num_elements))
    throw InvalidInstance("neighbourhoods inconsistent with sets");
}

bool is_cover(const Instance& inst, const std::vector<int>& chosen) {
  std::vector<char> covered(inst.num_elements, 0);
  for (int i : chosen) {
    if (i < 0 || i >= inst.num_sets) return false;
    for (int e : inst.sets[i]) covered[e] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool is_packing(const Instance& inst, const std::vector<int>& chosen) {
  std::vector<char> hit(inst.num_elements, 0);
  for (int i : chosen) {
    if (i < 0 || i >= inst.num_sets) return false;
    for (int e : inst.sets[i]) {
      if (hit[e]) return false;
      hit[e] = 1;
    }
  }
  return true;
}

double solution_cost(const Instance& inst, const std::vector<int>& chosen) {
  std::vector<int> order(chosen);
  std::sort(order.begin(), order.end());
  double total = 0.0;
  for (int i : order) total += inst.costs[i];
  return total;
}

Solution make_solution(const Instance& inst, ProblemKind kind, std::vector<int> chosen) {
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  if (!chosen.empty() && (chosen.front() < 0 || chosen.back() >= inst.num_sets))
    throw InvalidInstance("chosen set index out of range");
  Solution sol;
  sol.kind = kind;
  sol.objective = solution_cost(inst, chosen);
  sol.chosen = std::move(chosen);
  return sol;
}

double density(const Instance& inst) {
  if (inst.num_sets == 0 || inst.num_elements == 0)
    throw InvalidInstance("density needs at least one set and one element");
  long long ones = 0;
  for (const auto& s : inst.sets) ones += static_cast<long long>(s.size());
  return static_cast<double>(ones) /
         (static_cast<double>(inst.num_sets) * static_cast<double>(inst.num_elements));
}

}  // namespace coverpack
