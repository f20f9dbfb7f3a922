#include "ikep/solver.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "ikep/matching.hpp"

namespace ikep {

namespace {

// Conflict structure over a candidate cycle list: bitset rows of pairwise
// vertex intersection.
struct ConflictGraph {
  int count = 0;
  int words = 0;    // words per conflict row (over cycle indices)
  int vwords = 0;   // words per vertex mask
  std::vector<std::uint64_t> rows;           // count x words
  std::vector<std::uint64_t> vertex_masks;   // count x vwords
  std::vector<int> lengths;

  explicit ConflictGraph(const std::vector<Cycle>& cycles, int vertex_count) {
    count = static_cast<int>(cycles.size());
    words = (count + 63) / 64;
    vwords = (vertex_count + 63) / 64;
    rows.assign(static_cast<std::size_t>(count) * words, 0);
    vertex_masks.assign(static_cast<std::size_t>(count) * std::max(vwords, 1), 0);
    lengths.resize(count);
    std::vector<std::vector<int>> at(vertex_count);
    for (int i = 0; i < count; ++i) {
      lengths[i] = cycles[i].length();
      for (VertexId v : cycles[i].vertices()) {
        at[v].push_back(i);
        vertex_masks[static_cast<std::size_t>(i) * vwords + v / 64] |= 1ull << (v % 64);
      }
    }
    for (const auto& list : at) {
      for (int a : list) {
        for (int b : list) set(a, b);
      }
    }
  }

  void set(int a, int b) { rows[static_cast<std::size_t>(a) * words + b / 64] |= 1ull << (b % 64); }
  const std::uint64_t* row(int a) const { return rows.data() + static_cast<std::size_t>(a) * words; }
  const std::uint64_t* vmask(int a) const {
    return vertex_masks.data() + static_cast<std::size_t>(a) * vwords;
  }
};

using Mask = std::vector<std::uint64_t>;

bool mask_test(const Mask& m, int i) { return (m[i / 64] >> (i % 64)) & 1ull; }
void mask_set(Mask& m, int i) { m[i / 64] |= 1ull << (i % 64); }
void mask_clear(Mask& m, int i) { m[i / 64] &= ~(1ull << (i % 64)); }

// Branch and bound over "cover the lowest coverable vertex or give it up".
// Every packing is generated once: a packing either contains the unique
// cycle it uses through that vertex or leaves the vertex uncovered.  The
// admissible bound is the number of vertices the still-feasible candidates
// could cover, each counting once.
class PackingSearch {
 public:
  PackingSearch(const ConflictGraph& graph, std::int64_t max_nodes)
      : graph_(graph), max_nodes_(max_nodes) {
    cycles_at_.resize(static_cast<std::size_t>(graph.vwords) * 64);
    for (int i = 0; i < graph.count; ++i) {
      const std::uint64_t* vm = graph.vmask(i);
      for (int w = 0; w < graph.vwords; ++w) {
        std::uint64_t bits = vm[w];
        while (bits) {
          int v = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          cycles_at_[v].push_back(i);
        }
      }
    }
  }

  // Best value attainable using candidates allowed by `allowed`, stopping
  // early when `target` is reached (pass INT_MAX-ish to disable).
  int best_value(const Mask& allowed, int target, std::int64_t* node_counter) {
    allowed_ = &allowed;
    target_ = target;
    best_ = greedy(allowed);
    nodes_ = 0;
    if (best_ < target_) {
      Mask blocked(graph_.vwords, 0);
      dfs(blocked, 0);
    }
    if (node_counter) *node_counter += nodes_;
    return best_;
  }

 private:
  bool feasible(int idx, const Mask& blocked) const {
    const std::uint64_t* vm = graph_.vmask(idx);
    for (int w = 0; w < graph_.vwords; ++w) {
      if (vm[w] & blocked[w]) return false;
    }
    return true;
  }

  int greedy(const Mask& allowed) {
    std::vector<int> order;
    for (int i = 0; i < graph_.count; ++i) {
      if (mask_test(allowed, i)) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return graph_.lengths[a] > graph_.lengths[b];
    });
    Mask blocked(graph_.vwords, 0);
    int value = 0;
    for (int i : order) {
      if (!feasible(i, blocked)) continue;
      value += graph_.lengths[i];
      const std::uint64_t* vm = graph_.vmask(i);
      for (int w = 0; w < graph_.vwords; ++w) blocked[w] |= vm[w];
    }
    return value;
  }

  void dfs(const Mask& blocked, int value) {
    if (++nodes_ > max_nodes_) {
      throw BudgetExceededError("packing search exceeded node budget");
    }
    if (value > best_) best_ = value;
    if (best_ >= target_) return;

    // Union of the vertex sets of all still-feasible candidates.
    Mask coverable(graph_.vwords, 0);
    for (int i = 0; i < graph_.count; ++i) {
      if (!mask_test(*allowed_, i) || !feasible(i, blocked)) continue;
      const std::uint64_t* vm = graph_.vmask(i);
      for (int w = 0; w < graph_.vwords; ++w) coverable[w] |= vm[w];
    }
    int headroom = 0;
    for (std::uint64_t w : coverable) headroom += std::popcount(w);
    if (value + headroom <= best_) return;

    int branch_vertex = -1;
    for (int w = 0; w < graph_.vwords && branch_vertex < 0; ++w) {
      if (coverable[w]) branch_vertex = w * 64 + std::countr_zero(coverable[w]);
    }
    // Cover the vertex with each feasible candidate in canonical order...
    for (int idx : cycles_at_[branch_vertex]) {
      if (!mask_test(*allowed_, idx) || !feasible(idx, blocked)) continue;
      Mask next = blocked;
      const std::uint64_t* vm = graph_.vmask(idx);
      for (int w = 0; w < graph_.vwords; ++w) next[w] |= vm[w];
      dfs(next, value + graph_.lengths[idx]);
      if (best_ >= target_) return;
    }
    // ... or leave it uncovered for good.
    Mask skipped = blocked;
    skipped[branch_vertex / 64] |= 1ull << (branch_vertex % 64);
    dfs(skipped, value);
  }

  const ConflictGraph& graph_;
  std::int64_t max_nodes_;
  std::vector<std::vector<int>> cycles_at_;
  const Mask* allowed_ = nullptr;
  int target_ = 0;
  int best_ = 0;
  std::int64_t nodes_ = 0;
};

// Within one conflict component: among maximum packings, the
// lexicographically smallest sorted cycle list.  Scan candidates in
// canonical order and keep a cycle iff the prefix still extends to the
// optimum using later candidates only.
std::vector<Cycle> extract_lexmin(const std::vector<Cycle>& cycles, const ConflictGraph& graph,
                                  Mask avail, int opt, std::int64_t max_nodes,
                                  std::int64_t* node_counter) {
  PackingSearch search(graph, max_nodes);
  std::vector<Cycle> chosen;
  int value = 0;
  for (int i = 0; i < graph.count && value < opt; ++i) {
    if (!mask_test(avail, i)) continue;
    Mask rest = avail;
    for (int w = 0; w < graph.words; ++w) rest[w] &= ~graph.row(i)[w];
    for (int j = 0; j <= i; ++j) mask_clear(rest, j);
    int need = opt - value - graph.lengths[i];
    if (need < 0) {
      mask_clear(avail, i);
      continue;
    }
    int reachable = need == 0 ? 0 : search.best_value(rest, need, node_counter);
    if (reachable >= need) {
      chosen.push_back(cycles[i]);
      value += graph.lengths[i];
      avail = rest;
    } else {
      mask_clear(avail, i);
    }
  }
  return chosen;
}

// Connected components of the conflict relation; candidates in different
// components never interact, so the search solves them independently.
std::vector<std::vector<int>> conflict_components(const ConflictGraph& graph) {
  std::vector<std::vector<int>> components;
  std::vector<bool> seen(graph.count, false);
  for (int start = 0; start < graph.count; ++start) {
    if (seen[start]) continue;
    std::vector<int> queue{start};
    seen[start] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint64_t* row = graph.row(queue[head]);
      for (int w = 0; w < graph.words; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          int j = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (j < graph.count && !seen[j]) {
            seen[j] = true;
            queue.push_back(j);
          }
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    components.push_back(std::move(queue));
  }
  return components;
}

std::vector<Cycle> gamma_candidates(const Instance& inst, const EnumerationBudget& budget,
                                    const VertexSet* restrict_to) {
  return enumerate_gamma_cycles(inst, budget, restrict_to).all_gamma_cycles();
}

}  // namespace

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Exact: return "exact";
    case SolveMethod::BruteForce: return "brute_force";
    case SolveMethod::MatchingTwoCycles: return "matching_two_cycles";
    case SolveMethod::UnboundedCycleCover: return "unbounded_cycle_cover";
  }
  return "?";
}

SolveResult max_gamma_packing_exact(const Instance& inst, const SolveBudget& budget,
                                    const VertexSet* restrict_to) {
  std::vector<Cycle> cycles = gamma_candidates(inst, budget.enumeration, restrict_to);
  ConflictGraph graph(cycles, inst.vertex_count());
  SolveResult result;
  result.method = SolveMethod::Exact;
  if (cycles.empty()) return result;
  PackingSearch search(graph, budget.max_nodes);
  int no_target = std::numeric_limits<int>::max() / 2;
  std::vector<Cycle> chosen;
  for (const std::vector<int>& component : conflict_components(graph)) {
    Mask members(graph.words, 0);
    for (int idx : component) mask_set(members, idx);
    int value = search.best_value(members, no_target, &result.node_count);
    result.opt_value += value;
    std::vector<Cycle> part =
        extract_lexmin(cycles, graph, members, value, budget.max_nodes, &result.node_count);
    chosen.insert(chosen.end(), part.begin(), part.end());
  }
  result.packing = CyclePacking(std::move(chosen));
  return result;
}

namespace {

// Literal subset scan over at most 20 Gamma-cycles.  valid/value tables are
// filled incrementally: a mask is a packing iff its lowest cycle does not
// conflict with the rest and the rest is a packing.
struct BruteTables {
  std::vector<std::uint32_t> conflict;
  std::vector<char> valid;
  std::vector<int> value;

  BruteTables(const std::vector<Cycle>& cycles, int vertex_count) {
    int k = static_cast<int>(cycles.size());
    conflict.assign(k, 0);
    std::vector<std::vector<int>> at(vertex_count);
    for (int i = 0; i < k; ++i) {
      for (VertexId v : cycles[i].vertices()) at[v].push_back(i);
    }
    for (const auto& list : at) {
      for (int a : list) {
        for (int b : list) conflict[a] |= 1u << b;
      }
    }
    std::size_t total = 1ull << k;
    valid.assign(total, 0);
    value.assign(total, 0);
    valid[0] = 1;
    for (std::size_t mask = 1; mask < total; ++mask) {
      int low = std::countr_zero(mask);
      std::size_t rest = mask & (mask - 1);
      valid[mask] = valid[rest] && (conflict[low] & rest) == 0;
      value[mask] = value[rest] + cycles[low].length();
    }
  }
};

}  // namespace

SolveResult brute_force_opt(const Instance& inst, const VertexSet* restrict_to) {
  std::vector<Cycle> cycles = gamma_candidates(inst, {}, restrict_to);
  if (cycles.size() > 20) {
    throw BudgetExceededError("brute_force_opt: more than 20 Gamma-cycles (" +
                              std::to_string(cycles.size()) + ")");
  }
  SolveResult result;
  result.method = SolveMethod::BruteForce;
  if (cycles.empty()) return result;
  BruteTables tables(cycles, inst.vertex_count());
  int k = static_cast<int>(cycles.size());
  std::size_t total = 1ull << k;

  auto best_within = [&](std::uint32_t allowed) {
    int best = 0;
    for (std::size_t mask = 0; mask < total; ++mask) {
      if ((mask & ~static_cast<std::size_t>(allowed)) != 0) continue;
      if (tables.valid[mask]) best = std::max(best, tables.value[mask]);
      result.node_count++;
    }
    return best;
  };

  std::uint32_t all = k == 32 ? ~0u : ((1u << k) - 1);
  result.opt_value = best_within(all);

  // Same lex-min tie-break as the exact solver, against the subset oracle.
  std::uint32_t avail = all;
  std::vector<Cycle> chosen;
  int value = 0;
  for (int i = 0; i < k && value < result.opt_value; ++i) {
    if (!((avail >> i) & 1u)) continue;
    std::uint32_t rest = avail & ~tables.conflict[i];
    rest &= ~((i == 31) ? ~0u : ((1u << (i + 1)) - 1));
    int with_i = cycles[i].length() + best_within(rest);
    if (value + with_i == result.opt_value) {
      chosen.push_back(cycles[i]);
      value += cycles[i].length();
      avail = rest;
    } else {
      avail &= ~(1u << i);
    }
  }
  result.packing = CyclePacking(std::move(chosen));
  return result;
}

std::vector<CyclePacking> enumerate_all_packings(const Instance& inst, int max_cycles) {
  std::vector<Cycle> cycles = gamma_candidates(inst, {}, nullptr);
  if (static_cast<int>(cycles.size()) > max_cycles) {
    throw BudgetExceededError("enumerate_all_packings: too many Gamma-cycles");
  }
  BruteTables tables(cycles, inst.vertex_count());
  std::vector<CyclePacking> out;
  std::size_t total = 1ull << cycles.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (!tables.valid[mask]) continue;
    std::vector<Cycle> members;
    for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
      if ((mask >> i) & 1u) members.push_back(cycles[i]);
    }
    out.emplace_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool in_02(const Bound& b) { return b == Bound::finite(0) || b == Bound::finite(2); }
bool in_02inf(const Bound& b) { return in_02(b) || !b.is_finite(); }

bool all_of_ncl(const GammaParams& g, bool (*pred)(const Bound&)) {
  return std::all_of(g.ncl.begin(), g.ncl.end(), pred);
}

bool iss_all_one(const GammaParams& g) {
  return std::all_of(g.iss.begin(), g.iss.end(),
                     [](const Bound& b) { return b == Bound::finite(1); });
}

}  // namespace

DichotomyCase classify_gamma(const GammaParams& g) {
  if (g.n == 1) {
    if (in_02inf(g.ncl[0])) {
      return {true, 1, "n=1 with ncl in {0,2,inf}"};
    }
    return {false, 0, "n=1 with finite ncl >= 3"};
  }
  if (g.icl == Bound::finite(0) && all_of_ncl(g, in_02inf)) {
    return {true, 2, "icl=0 (no international cycles) with every ncl in {0,2,inf}"};
  }
  if (g.icl == Bound::finite(2) && all_of_ncl(g, in_02)) {
    return {true, 3, "icl=2 with every ncl in {0,2}"};
  }
  if (g.n == 2 && g.icl == Bound::finite(3) && iss_all_one(g) && all_of_ncl(g, in_02)) {
    return {true, 4, "n=2, icl=3, iss=(1,1), ncl in {0,2}"};
  }
  if (g.n == 2 && g.icl >= Bound::finite(4) && iss_all_one(g) && all_of_ncl(g, in_02) &&
      std::any_of(g.isn.begin(), g.isn.end(),
                  [](const Bound& b) { return b == Bound::finite(1); })) {
    return {true, 5, "n=2, icl>=4, iss=(1,1), some isn_j=1, ncl in {0,2}"};
  }
  bool ncl_all_zero = std::all_of(g.ncl.begin(), g.ncl.end(),
                                  [](const Bound& b) { return b == Bound::finite(0); });
  bool isn_all_inf =
      std::all_of(g.isn.begin(), g.isn.end(), [](const Bound& b) { return !b.is_finite(); });
  if (!g.icl.is_finite() && ncl_all_zero && iss_all_one(g) && isn_all_inf) {
    return {true, 6, "icl=inf, ncl=0, iss=1, isn=inf (international alternating cover)"};
  }
  bool ncl_all_inf =
      std::all_of(g.ncl.begin(), g.ncl.end(), [](const Bound& b) { return !b.is_finite(); });
  bool iss_all_inf =
      std::all_of(g.iss.begin(), g.iss.end(), [](const Bound& b) { return !b.is_finite(); });
  if (!g.icl.is_finite() && ncl_all_inf && iss_all_inf && isn_all_inf) {
    return {true, 7, "everything unbounded (plain cycle cover)"};
  }
  return {false, 0, "NP-hard (no polynomial case applies)"};
}

namespace {

// Matching over Gamma-feasible 2-cycles; countries limits which vertices may
// participate (no restriction when country < 0).
SolveResult two_cycle_matching(const Instance& inst, int country) {
  std::vector<std::pair<int, int>> edges;
  for (const Arc& a : inst.arcs()) {
    if (a.first >= a.second || !inst.has_arc(a.second, a.first)) continue;
    if (country >= 0 &&
        (inst.country_of(a.first) != country || inst.country_of(a.second) != country)) {
      continue;
    }
    Cycle two({a.first, a.second});
    if (is_gamma_cycle(two, inst)) edges.push_back(a);
  }
  std::vector<int> mate = max_cardinality_matching(inst.vertex_count(), edges);
  std::vector<Cycle> cycles;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (mate[v] > v) cycles.emplace_back(std::vector<VertexId>{v, mate[v]});
  }
  SolveResult result;
  result.method = SolveMethod::MatchingTwoCycles;
  result.packing = CyclePacking(std::move(cycles));
  result.opt_value = result.packing.size();
  return result;
}

// Folklore split reduction: vertex v becomes row v and column v; weight 1
// on admissible arcs, 0 on the diagonal (vertex stays single), forbidden
// otherwise.  Matched weight-1 edges form a permutation whose nontrivial
// orbits are the packing cycles.
SolveResult cycle_cover(const Instance& inst, bool international_only, int country) {
  int n = inst.vertex_count();
  const long long kForbidden = -(1ll << 40);
  std::vector<std::vector<long long>> w(n, std::vector<long long>(n, kForbidden));
  for (int v = 0; v < n; ++v) w[v][v] = 0;
  for (const Arc& a : inst.arcs()) {
    bool admissible = international_only ? inst.arc_is_international(a.first, a.second)
                                         : true;
    if (country >= 0) {
      admissible = inst.country_of(a.first) == country && inst.country_of(a.second) == country;
    }
    if (admissible) w[a.first][a.second] = 1;
  }
  std::vector<int> to = max_weight_perfect_matching(w);
  std::vector<bool> done(n, false);
  std::vector<Cycle> cycles;
  for (int v = 0; v < n; ++v) {
    if (done[v] || to[v] == v) continue;
    std::vector<VertexId> orbit;
    int cur = v;
    while (!done[cur]) {
      done[cur] = true;
      orbit.push_back(cur);
      cur = to[cur];
    }
    cycles.emplace_back(std::move(orbit));
  }
  SolveResult result;
  result.method = SolveMethod::UnboundedCycleCover;
  result.packing = CyclePacking(std::move(cycles));
  result.opt_value = result.packing.size();
  return result;
}

SolveResult merge(SolveResult base, SolveResult extra) {
  std::vector<Cycle> cycles = base.packing.cycles();
  cycles.insert(cycles.end(), extra.packing.cycles().begin(), extra.packing.cycles().end());
  base.packing = CyclePacking(std::move(cycles));
  base.opt_value = base.packing.size();
  return base;
}

}  // namespace

SolveResult solve_poly_two_cycles(const Instance& inst) {
  DichotomyCase verdict = classify_gamma(inst.gamma());
  bool two_bounded = verdict.poly && (verdict.case_number >= 3 && verdict.case_number <= 5);
  if (verdict.poly && verdict.case_number <= 2) {
    two_bounded = std::all_of(inst.gamma().ncl.begin(), inst.gamma().ncl.end(),
                              [](const Bound& b) { return b.is_finite(); });
  }
  if (!two_bounded) {
    throw PreconditionError("solve_poly_two_cycles: Gamma is not a 2-cycle-bounded case");
  }
  return two_cycle_matching(inst, -1);
}

SolveResult solve_poly_unbounded(const Instance& inst) {
  DichotomyCase verdict = classify_gamma(inst.gamma());
  if (!verdict.poly || (verdict.case_number != 6 && verdict.case_number != 7)) {
    throw PreconditionError("solve_poly_unbounded: Gamma is not case 6 or 7");
  }
  return cycle_cover(inst, verdict.case_number == 6, -1);
}

SolveResult solve_poly_auto(const Instance& inst) {
  DichotomyCase verdict = classify_gamma(inst.gamma());
  if (!verdict.poly) {
    throw PreconditionError("solve_poly_auto: " + verdict.description);
  }
  switch (verdict.case_number) {
    case 1:
    case 2: {
      // International cycles are impossible; countries are independent.
      SolveResult result;
      result.method = SolveMethod::MatchingTwoCycles;
      for (int i = 0; i < inst.country_count(); ++i) {
        const Bound& limit = inst.gamma().ncl[i];
        if (limit == Bound::finite(0)) continue;
        result = limit.is_finite() ? merge(result, two_cycle_matching(inst, i))
                                   : merge(result, cycle_cover(inst, false, i));
        if (!limit.is_finite()) result.method = SolveMethod::UnboundedCycleCover;
      }
      return result;
    }
    case 3:
    case 4:
    case 5:
      return solve_poly_two_cycles(inst);
    default:
      return solve_poly_unbounded(inst);
  }
}

}  // namespace ikep
