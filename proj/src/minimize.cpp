#include "coverpack/minimize.hpp"

#include <algorithm>
#include <limits>

namespace coverpack {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Private-element test restricted to the still-uncovered universe: minimal
// means covering, with every set owning an alive element nothing else in
// the cover touches.
bool minimal_on(const Instance& inst, const std::vector<char>& alive,
                const std::vector<int>& cover) {
  std::vector<int> coverage(inst.num_elements, 0);
  for (int i : cover)
    for (int e : inst.sets[i])
      if (alive[e]) ++coverage[e];
  for (int e = 0; e < inst.num_elements; ++e)
    if (alive[e] && coverage[e] == 0) return false;
  for (int i : cover) {
    bool has_private = false;
    for (int e : inst.sets[i])
      if (alive[e] && coverage[e] == 1) {
        has_private = true;
        break;
      }
    if (!has_private) return false;
  }
  return true;
}

std::vector<int> rm(const Instance& inst, std::vector<char>& alive, std::vector<int> cover,
                    const EngineConfig& cfg, MinimizeChain* chain) {
  if (chain) {
    MinimizeChain::Level level;
    level.sets = cover;
    for (int e = 0; e < inst.num_elements; ++e)
      if (alive[e]) level.elements.push_back(e);
    chain->levels.push_back(std::move(level));
  }
  bool any_alive = false;
  for (int e = 0; e < inst.num_elements; ++e)
    if (alive[e]) {
      any_alive = true;
      break;
    }
  if (!any_alive) return {};
  if (minimal_on(inst, alive, cover)) return cover;

  // Restrict to the cover's sets over the alive universe and rerun greedy.
  std::vector<int> elem_of_sub;
  std::vector<int> new_elem(inst.num_elements, -1);
  for (int e = 0; e < inst.num_elements; ++e) {
    if (!alive[e]) continue;
    new_elem[e] = static_cast<int>(elem_of_sub.size());
    elem_of_sub.push_back(e);
  }
  std::vector<std::vector<int>> sets;
  std::vector<double> costs;
  for (int i : cover) {
    std::vector<int> s;
    for (int e : inst.sets[i])
      if (alive[e]) s.push_back(new_elem[e]);
    sets.push_back(std::move(s));
    costs.push_back(inst.costs[i]);
  }
  Instance sub;
  sub.num_sets = static_cast<int>(sets.size());
  sub.num_elements = static_cast<int>(elem_of_sub.size());
  sub.neighbourhoods = neighbourhoods_from_sets(sets, sub.num_elements);
  sub.sets = std::move(sets);
  sub.costs = std::move(costs);

  const RunReport run = greedy_cover(sub, cfg);
  std::vector<int> rerun_cover;
  rerun_cover.reserve(run.solution.chosen.size());
  for (int s : run.solution.chosen) rerun_cover.push_back(cover[s]);
  const int b = run.selection_order.empty() ? rerun_cover.back()
                                            : cover[run.selection_order.back()];

  std::vector<int> killed;
  for (int e : inst.sets[b])
    if (alive[e]) {
      alive[e] = 0;
      killed.push_back(e);
    }
  std::vector<int> remainder;
  for (int s : rerun_cover)
    if (s != b) remainder.push_back(s);

  std::vector<int> rest = rm(inst, alive, std::move(remainder), cfg, chain);

  // b earned its place with the killed elements; if the deeper levels ended
  // up covering all of them anyway, b is redundant after all.
  std::vector<char> covered(inst.num_elements, 0);
  for (int s : rest)
    for (int e : inst.sets[s]) covered[e] = 1;
  for (int e : killed)
    if (!covered[e]) {
      rest.push_back(b);
      return rest;
    }
  return rest;
}

}  // namespace

std::vector<int> wool_grossman(const Instance& inst, const std::vector<int>& cover) {
  std::vector<int> chosen = sorted_unique(cover);
  if (!is_cover(inst, chosen)) throw NotACover("input does not cover the universe");
  std::vector<int> extra(inst.num_elements, 0);  // coverings beyond the first
  for (int i : chosen)
    for (int e : inst.sets[i]) ++extra[e];
  for (int& x : extra) --x;

  std::vector<char> alive(chosen.size(), 1);
  constexpr long long kEmptySlack = std::numeric_limits<long long>::max();
  for (;;) {
    int victim = -1;
    long long victim_slack = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      if (!alive[k]) continue;
      long long slack = kEmptySlack;
      for (int e : inst.sets[chosen[k]]) slack = std::min<long long>(slack, extra[e]);
      if (slack <= 0) continue;
      const bool wins =
          victim == -1 || slack > victim_slack ||
          (slack == victim_slack &&
           (inst.costs[chosen[k]] > inst.costs[chosen[victim]] ||
            (inst.costs[chosen[k]] == inst.costs[chosen[victim]] &&
             chosen[k] > chosen[victim])));
      if (wins) {
        victim = static_cast<int>(k);
        victim_slack = slack;
      }
    }
    if (victim == -1) break;
    alive[victim] = 0;
    for (int e : inst.sets[chosen[victim]]) --extra[e];
  }
  std::vector<int> out;
  for (std::size_t k = 0; k < chosen.size(); ++k)
    if (alive[k]) out.push_back(chosen[k]);
  return out;
}

bool is_minimal_cover(const Instance& inst, const std::vector<int>& chosen) {
  const std::vector<int> cover = sorted_unique(chosen);
  if (!is_cover(inst, cover)) return false;
  const std::vector<char> alive(inst.num_elements, 1);
  return minimal_on(inst, alive, cover);
}

std::vector<int> recursive_minimize(const Instance& inst, const std::vector<int>& cover,
                                    const EngineConfig& cfg, MinimizeChain* chain) {
  std::vector<int> work = sorted_unique(cover);
  if (!is_cover(inst, work)) throw NotACover("input does not cover the universe");
  EngineConfig inner = cfg;
  inner.minimize_result = MinimizeMode::none;
  std::vector<char> alive(inst.num_elements, 1);
  std::vector<int> out = rm(inst, alive, std::move(work), inner, chain);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coverpack
