#include "ikep/enumeration.hpp"

#include <algorithm>
#include <functional>

namespace ikep {

namespace {

// Duplicate-free simple-cycle DFS: a cycle is emitted exactly once, rooted at
// its smallest vertex.  From anchor s only vertices > s may be visited, so
// the emitted sequence is already canonical.
class CycleDfs {
 public:
  CycleDfs(const Instance& inst, std::int64_t depth_cap, std::int64_t max_cycles,
           const VertexSet* restrict_to)
      : inst_(inst),
        depth_cap_(depth_cap),
        max_cycles_(max_cycles),
        restrict_(restrict_to),
        on_path_(inst.vertex_count(), false) {}

  // vertex_ok filters path vertices (e.g. one country); emit_ok filters the
  // finished cycle (e.g. requires an international arc).
  std::vector<Cycle> run(const std::function<bool(VertexId)>& vertex_ok,
                         const std::function<bool(const std::vector<VertexId>&)>& emit_ok) {
    std::vector<Cycle> out;
    if (depth_cap_ < 2) return out;
    for (VertexId s = 0; s < inst_.vertex_count(); ++s) {
      if (!allowed(s) || !vertex_ok(s)) continue;
      path_.clear();
      path_.push_back(s);
      on_path_[s] = true;
      extend(s, vertex_ok, emit_ok, out);
      on_path_[s] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool allowed(VertexId v) const { return restrict_ == nullptr || restrict_->contains(v); }

  void extend(VertexId anchor, const std::function<bool(VertexId)>& vertex_ok,
              const std::function<bool(const std::vector<VertexId>&)>& emit_ok,
              std::vector<Cycle>& out) {
    VertexId tail = path_.back();
    for (VertexId next : inst_.out_neighbors(tail)) {
      if (next == anchor) {
        if (path_.size() >= 2 && emit_ok(path_)) {
          if (static_cast<std::int64_t>(out.size()) >= max_cycles_) {
            throw EnumerationOverflowError("cycle enumeration exceeded budget of " +
                                           std::to_string(max_cycles_) + " cycles");
          }
          out.emplace_back(path_);
        }
        continue;
      }
      if (next < anchor || on_path_[next] || !allowed(next) || !vertex_ok(next)) continue;
      if (static_cast<std::int64_t>(path_.size()) >= depth_cap_) continue;
      path_.push_back(next);
      on_path_[next] = true;
      extend(anchor, vertex_ok, emit_ok, out);
      on_path_[next] = false;
      path_.pop_back();
    }
  }

  const Instance& inst_;
  std::int64_t depth_cap_;
  std::int64_t max_cycles_;
  const VertexSet* restrict_;
  std::vector<bool> on_path_;
  std::vector<VertexId> path_;
};

bool has_international_arc(const std::vector<VertexId>& cyc, const Instance& inst) {
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (inst.country_of(cyc[i]) != inst.country_of(cyc[(i + 1) % cyc.size()])) return true;
  }
  return false;
}

}  // namespace

std::vector<Cycle> enumerate_international_cycles(const Instance& inst, Bound length_cap,
                                                  const EnumerationBudget& budget,
                                                  const VertexSet* restrict_to) {
  std::int64_t cap = length_cap.finite_or(inst.vertex_count());
  cap = std::min<std::int64_t>(cap, inst.vertex_count());
  CycleDfs dfs(inst, cap, budget.max_cycles, restrict_to);
  return dfs.run([](VertexId) { return true; },
                 [&](const std::vector<VertexId>& cyc) { return has_international_arc(cyc, inst); });
}

std::vector<Cycle> enumerate_national_cycles(const Instance& inst, int country, Bound length_cap,
                                             const EnumerationBudget& budget,
                                             const VertexSet* restrict_to) {
  std::int64_t cap = length_cap.finite_or(
      static_cast<std::int64_t>(inst.country_vertices(country).size()));
  cap = std::min<std::int64_t>(cap, static_cast<std::int64_t>(inst.country_vertices(country).size()));
  CycleDfs dfs(inst, cap, budget.max_cycles, restrict_to);
  return dfs.run([&](VertexId v) { return inst.country_of(v) == country; },
                 [](const std::vector<VertexId>&) { return true; });
}

CycleCatalog enumerate_gamma_cycles(const Instance& inst, const EnumerationBudget& budget,
                                    const VertexSet* restrict_to) {
  CycleCatalog catalog;
  catalog.national_gamma.resize(inst.country_count());
  for (int i = 0; i < inst.country_count(); ++i) {
    if (inst.gamma().ncl[i] < Bound::finite(2)) continue;
    catalog.national_gamma[i] =
        enumerate_national_cycles(inst, i, inst.gamma().ncl[i], budget, restrict_to);
  }
  catalog.international_all =
      enumerate_international_cycles(inst, inst.gamma().icl, budget, restrict_to);
  for (const Cycle& c : catalog.international_all) {
    if (is_gamma_cycle(c, inst)) catalog.international_gamma.push_back(c);
  }

  // Vertex-indexed lists give the pairwise intersection structure of X.
  std::vector<std::vector<int>> cycles_at(inst.vertex_count());
  for (int idx = 0; idx < static_cast<int>(catalog.international_all.size()); ++idx) {
    for (VertexId v : catalog.international_all[idx].vertices()) cycles_at[v].push_back(idx);
  }
  catalog.intersection_index.resize(catalog.international_all.size());
  for (int idx = 0; idx < static_cast<int>(catalog.international_all.size()); ++idx) {
    std::vector<int> hits;
    for (VertexId v : catalog.international_all[idx].vertices()) {
      hits.insert(hits.end(), cycles_at[v].begin(), cycles_at[v].end());
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    catalog.intersection_index[idx] = std::move(hits);
  }
  return catalog;
}

std::vector<Cycle> CycleCatalog::all_gamma_cycles() const {
  std::vector<Cycle> out;
  for (const auto& per_country : national_gamma) {
    out.insert(out.end(), per_country.begin(), per_country.end());
  }
  out.insert(out.end(), international_gamma.begin(), international_gamma.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cycle> substitutes_with_segment_cap(const Cycle& c, const Instance& inst,
                                                int max_segments_per_country) {
  VertexSet inside = VertexSet::of(inst, c.vertices());
  std::vector<Cycle> candidates =
      enumerate_international_cycles(inst, inst.gamma().icl, {}, &inside);
  std::vector<Cycle> out;
  for (const Cycle& d : candidates) {
    if (d == c) continue;
    if (!is_gamma_cycle(d, inst)) continue;
    std::vector<int> counts(inst.country_count(), 0);
    bool ok = true;
    for (const Segment& s : segment_decomposition(d, inst)) {
      if (++counts[s.country] > max_segments_per_country) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(d);
  }
  return out;
}

std::vector<Cycle> substitutes(const Cycle& c, const Instance& inst) {
  return substitutes_with_segment_cap(c, inst, 1);
}

InstanceStats stats_from_catalog(const Instance& inst, const CycleCatalog& catalog) {
  InstanceStats stats;
  for (const auto& per_country : catalog.national_gamma) {
    for (const Cycle& c : per_country) stats.c_nat = std::max(stats.c_nat, c.length());
  }
  for (const Cycle& c : catalog.international_gamma) {
    stats.c_int = std::max(stats.c_int, c.length());
  }
  std::vector<std::vector<int>> cycles_at(inst.vertex_count());
  for (int idx = 0; idx < static_cast<int>(catalog.international_gamma.size()); ++idx) {
    for (VertexId v : catalog.international_gamma[idx].vertices()) cycles_at[v].push_back(idx);
  }
  for (int idx = 0; idx < static_cast<int>(catalog.international_gamma.size()); ++idx) {
    std::vector<int> hits;
    for (VertexId v : catalog.international_gamma[idx].vertices()) {
      hits.insert(hits.end(), cycles_at[v].begin(), cycles_at[v].end());
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    stats.d_star = std::max(stats.d_star, static_cast<int>(hits.size()));
  }
  return stats;
}

InstanceStats instance_stats(const Instance& inst, const EnumerationBudget& budget) {
  return stats_from_catalog(inst, enumerate_gamma_cycles(inst, budget));
}

}  // namespace ikep
