#include "coverpack/preprocess.hpp"

#include <algorithm>
#include <string>

namespace coverpack {

namespace {

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

void insert_sorted(std::vector<int>& sorted, int x) {
  sorted.insert(std::lower_bound(sorted.begin(), sorted.end(), x), x);
}

void erase_sorted(std::vector<int>& sorted, int x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it != sorted.end() && *it == x) sorted.erase(it);
}

// Builds the reduced instance over the surviving rows and columns and fills
// the trace's renumber maps (reduced index -> given index, ascending).
Instance build_reduced(const Instance& inst, const std::vector<std::vector<int>>& cur_sets,
                       const std::vector<char>& set_alive, const std::vector<char>& elem_alive,
                       PreprocessTrace& trace) {
  std::vector<int> new_elem(inst.num_elements, -1);
  for (int e = 0; e < inst.num_elements; ++e) {
    if (!elem_alive[e]) continue;
    new_elem[e] = static_cast<int>(trace.element_renumber.size());
    trace.element_renumber.push_back(e);
  }
  std::vector<std::vector<int>> sets;
  std::vector<double> costs;
  for (int i = 0; i < inst.num_sets; ++i) {
    if (!set_alive[i]) continue;
    trace.set_renumber.push_back(i);
    std::vector<int> filtered;
    filtered.reserve(cur_sets[i].size());
    for (int e : cur_sets[i])
      if (elem_alive[e]) filtered.push_back(new_elem[e]);
    sets.push_back(std::move(filtered));
    costs.push_back(inst.costs[i]);
  }
  Instance out;
  out.num_sets = static_cast<int>(sets.size());
  out.num_elements = static_cast<int>(trace.element_renumber.size());
  out.neighbourhoods = neighbourhoods_from_sets(sets, out.num_elements);
  out.sets = std::move(sets);
  out.costs = std::move(costs);
  return out;
}

void sort_trace_lists(PreprocessTrace& trace) {
  std::sort(trace.forced_in.begin(), trace.forced_in.end());
  std::sort(trace.forced_out.begin(), trace.forced_out.end());
  std::sort(trace.removed_elements.begin(), trace.removed_elements.end());
}

}  // namespace

std::pair<Instance, PreprocessTrace> basic_preprocess(const Instance& inst, ProblemKind kind) {
  const int m = inst.num_sets;
  const int n = inst.num_elements;
  std::vector<char> set_alive(m, 1), elem_alive(n, 1);
  std::vector<int> live_size(m), live_degree(n);
  for (int i = 0; i < m; ++i) live_size[i] = static_cast<int>(inst.sets[i].size());
  for (int e = 0; e < n; ++e) live_degree[e] = static_cast<int>(inst.neighbourhoods[e].size());
  PreprocessTrace trace;

  auto kill_set = [&](int i) {
    set_alive[i] = 0;
    for (int e : inst.sets[i])
      if (elem_alive[e]) --live_degree[e];
  };
  auto kill_elem = [&](int e) {
    elem_alive[e] = 0;
    for (int i : inst.neighbourhoods[e])
      if (set_alive[i]) --live_size[i];
  };
  auto take_cover_set = [&](int i) {
    trace.forced_in.push_back(i);
    kill_set(i);
    for (int e : inst.sets[i]) {
      if (!elem_alive[e]) continue;
      kill_elem(e);
      trace.removed_elements.push_back(e);
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < m; ++i) {
      if (!set_alive[i] || inst.costs[i] > 0.0) continue;
      if (kind == ProblemKind::cover) {
        take_cover_set(i);
      } else {
        trace.forced_out.push_back(i);
        kill_set(i);
      }
      changed = true;
    }
    for (int i = 0; i < m; ++i) {
      if (!set_alive[i] || live_size[i] > 0) continue;
      if (kind == ProblemKind::cover)
        trace.forced_out.push_back(i);
      else
        trace.forced_in.push_back(i);
      kill_set(i);
      changed = true;
    }
    for (int e = 0; e < n; ++e) {
      if (!elem_alive[e] || live_degree[e] > 0) continue;
      if (kind == ProblemKind::cover)
        throw Infeasible(e, "element " + std::to_string(e) + " is in no set");
      kill_elem(e);
      trace.removed_elements.push_back(e);
      changed = true;
    }
    for (int e = 0; e < n; ++e) {
      if (!elem_alive[e] || live_degree[e] != 1) continue;
      if (kind == ProblemKind::cover) {
        int owner = -1;
        for (int i : inst.neighbourhoods[e])
          if (set_alive[i]) {
            owner = i;
            break;
          }
        take_cover_set(owner);
      } else {
        kill_elem(e);
        trace.removed_elements.push_back(e);
      }
      changed = true;
    }
  }

  Instance out = build_reduced(inst, inst.sets, set_alive, elem_alive, trace);
  sort_trace_lists(trace);
  return {std::move(out), std::move(trace)};
}

std::pair<Instance, PreprocessTrace> subsumption_preprocess(const Instance& inst,
                                                            ProblemKind kind) {
  const int m = inst.num_sets;
  const int n = inst.num_elements;
  std::vector<std::vector<int>> cur_sets = inst.sets;
  std::vector<std::vector<int>> cur_nbh = inst.neighbourhoods;
  std::vector<char> set_alive(m, 1), elem_alive(n, 1);
  PreprocessTrace trace;

  auto remove_set = [&](int i) {
    set_alive[i] = 0;
    trace.forced_out.push_back(i);
    for (int e : cur_sets[i]) erase_sorted(cur_nbh[e], i);
    cur_sets[i].clear();
  };
  auto remove_elem = [&](int e) {
    elem_alive[e] = 0;
    trace.removed_elements.push_back(e);
    for (int i : cur_nbh[e]) erase_sorted(cur_sets[i], e);
    cur_nbh[e].clear();
  };

  // Set i against superset j. Scanning i ascending makes the equal-and-tied
  // outcome deterministic: the lower index survives.
  auto set_pass = [&]() {
    bool changed = false;
    for (int i = 0; i < m; ++i) {
      if (!set_alive[i] || cur_sets[i].empty()) continue;
      const int e0 = cur_sets[i].front();
      const std::vector<int> candidates = cur_nbh[e0];
      for (int j : candidates) {
        if (!set_alive[i]) break;
        if (j == i || !set_alive[j]) continue;
        if (!is_subset(cur_sets[i], cur_sets[j])) continue;
        if (!(inst.costs[i] >= inst.costs[j])) continue;
        int victim;
        if (cur_sets[i].size() == cur_sets[j].size() && inst.costs[i] == inst.costs[j])
          victim = std::max(i, j);
        else
          victim = kind == ProblemKind::cover ? i : j;
        remove_set(victim);
        changed = true;
      }
    }
    return changed;
  };

  // Element e against element e2 with a larger neighbourhood. For cover the
  // larger-neighbourhood element is redundant; for packing the smaller one
  // is. Scanning e ascending keeps equal-neighbourhood ties deterministic.
  auto element_pass = [&]() {
    bool changed = false;
    for (int e = 0; e < n; ++e) {
      if (!elem_alive[e] || cur_nbh[e].empty()) continue;
      const int i0 = cur_nbh[e].front();
      const std::vector<int> candidates = cur_sets[i0];
      for (int e2 : candidates) {
        if (!elem_alive[e]) break;
        if (e2 == e || !elem_alive[e2]) continue;
        if (!is_subset(cur_nbh[e], cur_nbh[e2])) continue;
        remove_elem(kind == ProblemKind::cover ? e2 : e);
        changed = true;
      }
    }
    return changed;
  };

  while (set_pass() | element_pass()) {
  }

  Instance out = build_reduced(inst, cur_sets, set_alive, elem_alive, trace);
  sort_trace_lists(trace);
  return {std::move(out), std::move(trace)};
}

std::vector<std::pair<Instance, PreprocessTrace>> split_components(const Instance& inst) {
  const int m = inst.num_sets;
  const int n = inst.num_elements;
  std::vector<int> set_comp(m, -1), elem_comp(n, -1);
  int comps = 0;
  std::vector<int> stack;
  for (int root = 0; root < m; ++root) {
    if (set_comp[root] != -1) continue;
    const int id = comps++;
    set_comp[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int e : inst.sets[i]) {
        if (elem_comp[e] != -1) continue;
        elem_comp[e] = id;
        for (int j : inst.neighbourhoods[e]) {
          if (set_comp[j] != -1) continue;
          set_comp[j] = id;
          stack.push_back(j);
        }
      }
    }
  }
  std::vector<std::vector<int>> comp_sets(comps), comp_elems(comps);
  for (int i = 0; i < m; ++i) comp_sets[set_comp[i]].push_back(i);
  for (int e = 0; e < n; ++e)
    if (elem_comp[e] != -1) comp_elems[elem_comp[e]].push_back(e);

  std::vector<std::pair<Instance, PreprocessTrace>> out;
  auto emit = [&](const std::vector<int>& set_ids, const std::vector<int>& elem_ids) {
    PreprocessTrace trace;
    trace.set_renumber = set_ids;
    trace.element_renumber = elem_ids;
    std::vector<int> new_elem(inst.num_elements, -1);
    for (int k = 0; k < static_cast<int>(elem_ids.size()); ++k) new_elem[elem_ids[k]] = k;
    std::vector<std::vector<int>> sets;
    std::vector<double> costs;
    for (int i : set_ids) {
      std::vector<int> s;
      s.reserve(inst.sets[i].size());
      for (int e : inst.sets[i]) s.push_back(new_elem[e]);
      sets.push_back(std::move(s));
      costs.push_back(inst.costs[i]);
    }
    Instance sub;
    sub.num_sets = static_cast<int>(sets.size());
    sub.num_elements = static_cast<int>(elem_ids.size());
    sub.neighbourhoods = neighbourhoods_from_sets(sets, sub.num_elements);
    sub.sets = std::move(sets);
    sub.costs = std::move(costs);
    out.emplace_back(std::move(sub), std::move(trace));
  };
  // Components found by ascending set scan are already ordered by their
  // smallest set index; isolated elements trail in element order.
  for (int id = 0; id < comps; ++id) emit(comp_sets[id], comp_elems[id]);
  for (int e = 0; e < n; ++e)
    if (elem_comp[e] == -1) emit({}, {e});
  return out;
}

std::pair<Instance, PreprocessTrace> strengthen_packing_constraints(const Instance& inst) {
  std::vector<std::vector<int>> sets = inst.sets;
  std::vector<std::vector<int>> nbh = inst.neighbourhoods;
  const int m = inst.num_sets;
  const int n = inst.num_elements;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < n; ++e) {
      if (nbh[e].empty()) continue;
      for (int i = 0; i < m; ++i) {
        if (contains(nbh[e], i)) continue;
        bool hits_all = true;
        for (int j : nbh[e]) {
          if (!intersects(sets[i], sets[j])) {
            hits_all = false;
            break;
          }
        }
        if (!hits_all) continue;
        insert_sorted(sets[i], e);
        insert_sorted(nbh[e], i);
        changed = true;
      }
    }
  }
  Instance widened;
  widened.num_sets = m;
  widened.num_elements = n;
  widened.sets = std::move(sets);
  widened.neighbourhoods = std::move(nbh);
  widened.costs = inst.costs;
  return subsumption_preprocess(widened, ProblemKind::packing);
}

std::vector<int> map_to_original(const PreprocessTrace& trace,
                                 const std::vector<int>& reduced_chosen) {
  std::vector<int> out = trace.forced_in;
  for (int s : reduced_chosen) out.push_back(trace.set_renumber.at(s));
  std::sort(out.begin(), out.end());
  return out;
}

PreprocessTrace compose_traces(const PreprocessTrace& first, const PreprocessTrace& second) {
  PreprocessTrace out;
  out.forced_in = first.forced_in;
  for (int s : second.forced_in) out.forced_in.push_back(first.set_renumber.at(s));
  out.forced_out = first.forced_out;
  for (int s : second.forced_out) out.forced_out.push_back(first.set_renumber.at(s));
  out.removed_elements = first.removed_elements;
  for (int e : second.removed_elements)
    out.removed_elements.push_back(first.element_renumber.at(e));
  out.set_renumber.reserve(second.set_renumber.size());
  for (int s : second.set_renumber) out.set_renumber.push_back(first.set_renumber.at(s));
  out.element_renumber.reserve(second.element_renumber.size());
  for (int e : second.element_renumber)
    out.element_renumber.push_back(first.element_renumber.at(e));
  sort_trace_lists(out);
  return out;
}

}  // namespace coverpack
