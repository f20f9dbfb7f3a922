#include "ikep/mechanisms.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ikep/rng.hpp"

namespace ikep {

void PackingDistribution::validate(const Instance& inst) const {
  Rat total = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& [packing, prob] = outcomes[i];
    if (prob <= 0) throw ValidationError("distribution has a non-positive probability");
    if (i > 0 && !(outcomes[i - 1].first < packing)) {
      throw ValidationError("distribution outcomes not sorted/distinct");
    }
    if (!is_gamma_packing(packing, inst)) {
      throw ValidationError("distribution outcome is not a Gamma-cycle packing");
    }
    total += prob;
  }
  if (total != 1) throw ValidationError("distribution probabilities sum to " + rat_str(total));
}

PackingDistribution point_distribution(CyclePacking p) {
  PackingDistribution d;
  d.outcomes.emplace_back(std::move(p), Rat(1));
  return d;
}

CyclePacking mech_nat(const Instance& inst, const SolveBudget& budget) {
  std::vector<Cycle> cycles;
  for (int country = 0; country < inst.country_count(); ++country) {
    if (inst.gamma().ncl[country] < Bound::finite(2)) continue;
    if (inst.country_vertices(country).empty()) continue;
    VertexSet pool = VertexSet::of(inst, inst.country_vertices(country));
    SolveResult national = max_gamma_packing_exact(inst, budget, &pool);
    cycles.insert(cycles.end(), national.packing.cycles().begin(),
                  national.packing.cycles().end());
  }
  return CyclePacking(std::move(cycles));
}

CyclePacking mech_int(const Instance& inst, const SolveBudget& budget) {
  return max_gamma_packing_exact(inst, budget).packing;
}

CyclePacking mech_con(const Instance& inst, bool national_in_second_stage,
                      const SolveBudget& budget) {
  CyclePacking first = mech_nat(inst, budget);
  VertexSet remaining = VertexSet::uncovered(inst, first);
  Instance stage2 = inst;
  if (!national_in_second_stage) {
    GammaParams g = inst.gamma();
    for (int i = 0; i < g.n; ++i) g = g.with_ncl(i, Bound::finite(0));
    stage2 = inst.with_gamma(g);
  }
  SolveResult second = max_gamma_packing_exact(stage2, budget, &remaining);
  std::vector<Cycle> cycles = first.cycles();
  cycles.insert(cycles.end(), second.packing.cycles().begin(), second.packing.cycles().end());
  return CyclePacking(std::move(cycles));
}

namespace {

std::vector<Cycle> candidate_cycles(const Instance& inst, const CyclePacking& preselected,
                                    const SolveBudget& budget) {
  VertexSet reduced = VertexSet::uncovered(inst, preselected);
  return enumerate_international_cycles(inst, inst.gamma().icl, budget.enumeration, &reduced);
}

std::vector<std::uint32_t> conflict_masks(const std::vector<Cycle>& cycles, int vertex_count) {
  std::vector<std::uint32_t> conflict(cycles.size(), 0);
  std::vector<std::vector<int>> at(vertex_count);
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    for (VertexId v : cycles[i].vertices()) at[v].push_back(i);
  }
  for (const auto& list : at) {
    for (int a : list) {
      for (int b : list) conflict[a] |= 1u << b;
    }
  }
  return conflict;
}

// How each candidate relates to the current Gamma: kept as-is, replaced by a
// substitute, or dropped.
struct CandidateFate {
  bool gamma_cycle = false;
  std::vector<Cycle> substitutes;  // nonempty <=> turnable
};

std::vector<CandidateFate> classify_candidates(const std::vector<Cycle>& candidates,
                                               const Instance& inst, const OrderOptions& opts) {
  std::vector<CandidateFate> fates(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (is_gamma_cycle(candidates[i], inst)) {
      fates[i].gamma_cycle = true;
    } else {
      fates[i].substitutes =
          substitutes_with_segment_cap(candidates[i], inst, opts.substitute_max_segments);
    }
  }
  return fates;
}

}  // namespace

namespace {

// Steps 2-4 for an arbitrary pre-selected national packing.
OrderSkeleton skeleton_for_preselection(const Instance& inst, CyclePacking preselected,
                                        const OrderOptions& opts) {
  OrderSkeleton skeleton;
  skeleton.preselected = std::move(preselected);
  skeleton.candidates = candidate_cycles(inst, skeleton.preselected, opts.budget);
  int m = static_cast<int>(skeleton.candidates.size());
  if (m > opts.exact_candidate_cap || m > 20) {
    throw BudgetExceededError("exact order distribution: |X(G-hat)| = " + std::to_string(m) +
                              " exceeds the cap of " + std::to_string(opts.exact_candidate_cap));
  }
  std::vector<std::uint32_t> conflict = conflict_masks(skeleton.candidates, inst.vertex_count());
  skeleton.intersections.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if ((conflict[i] >> j) & 1u) skeleton.intersections[i].push_back(j);
    }
  }

  // Exact distribution of the greedy pass over a uniformly random candidate
  // order.  Drawing the next unconsidered candidate uniformly is equivalent
  // to a uniform permutation, so a forward sweep over (remaining, selected)
  // states aggregates all m! orders in O(3^m) states.
  std::unordered_map<std::uint64_t, Rat> layer;
  layer[static_cast<std::uint64_t>((1u << m) - 1) << 32] = 1;
  for (int level = m; level >= 1; --level) {
    std::unordered_map<std::uint64_t, Rat> next;
    for (const auto& [key, prob] : layer) {
      auto remaining = static_cast<std::uint32_t>(key >> 32);
      auto selected = static_cast<std::uint32_t>(key & 0xffffffffu);
      Rat share = prob / level;
      for (int c = 0; c < m; ++c) {
        if (!((remaining >> c) & 1u)) continue;
        std::uint32_t rest = remaining & ~(1u << c);
        std::uint32_t sel = (conflict[c] & selected) ? selected : (selected | (1u << c));
        next[(static_cast<std::uint64_t>(rest) << 32) | sel] += share;
      }
    }
    layer = std::move(next);
  }
  skeleton.step4.reserve(layer.size());
  for (const auto& [key, prob] : layer) {
    skeleton.step4.emplace_back(static_cast<std::uint32_t>(key & 0xffffffffu), prob);
  }
  std::sort(skeleton.step4.begin(), skeleton.step4.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return skeleton;
}

}  // namespace

CyclePacking mech_order_sample(const Instance& inst, std::uint64_t seed,
                               const OrderOptions& opts) {
  CyclePacking preselected = mech_nat(inst, opts.budget);
  std::vector<Cycle> candidates = candidate_cycles(inst, preselected, opts.budget);
  DetRng rng(seed);
  rng.shuffle(candidates);

  std::vector<bool> blocked(inst.vertex_count(), false);
  std::vector<Cycle> picked;
  for (const Cycle& c : candidates) {
    bool free = true;
    for (VertexId v : c.vertices()) free = free && !blocked[v];
    if (!free) continue;
    for (VertexId v : c.vertices()) blocked[v] = true;
    picked.push_back(c);
  }

  std::vector<Cycle> result = preselected.cycles();
  for (const Cycle& c : picked) {
    if (is_gamma_cycle(c, inst)) {
      result.push_back(c);
      continue;
    }
    std::vector<Cycle> subs =
        substitutes_with_segment_cap(c, inst, opts.substitute_max_segments);
    if (!subs.empty()) result.push_back(subs[rng.below(subs.size())]);
  }
  return CyclePacking(std::move(result));
}

OrderSkeleton mech_order_skeleton(const Instance& inst, const OrderOptions& opts) {
  return skeleton_for_preselection(inst, mech_nat(inst, opts.budget), opts);
}

PackingDistribution mech_order_finalize(const OrderSkeleton& skeleton, const Instance& inst,
                                        const OrderOptions& opts) {
  std::vector<CandidateFate> fates = classify_candidates(skeleton.candidates, inst, opts);
  std::map<CyclePacking, Rat> agg;

  std::vector<Cycle> base = skeleton.preselected.cycles();
  for (const auto& [selected, prob] : skeleton.step4) {
    std::vector<Cycle> kept = base;
    std::vector<const std::vector<Cycle>*> branch_lists;
    for (int c = 0; c < static_cast<int>(skeleton.candidates.size()); ++c) {
      if (!((selected >> c) & 1u)) continue;
      if (fates[c].gamma_cycle) {
        kept.push_back(skeleton.candidates[c]);
      } else if (!fates[c].substitutes.empty()) {
        branch_lists.push_back(&fates[c].substitutes);
      }
    }
    // Substitute choices are uniform and independent across selected cycles.
    std::vector<std::size_t> choice(branch_lists.size(), 0);
    for (;;) {
      std::vector<Cycle> outcome = kept;
      Rat p = prob;
      for (std::size_t b = 0; b < branch_lists.size(); ++b) {
        outcome.push_back((*branch_lists[b])[choice[b]]);
        p /= static_cast<int>(branch_lists[b]->size());
      }
      agg[CyclePacking(std::move(outcome))] += p;
      std::size_t b = 0;
      while (b < branch_lists.size() && ++choice[b] == branch_lists[b]->size()) {
        choice[b] = 0;
        ++b;
      }
      if (b == branch_lists.size()) break;
    }
  }

  PackingDistribution dist;
  dist.outcomes.assign(agg.begin(), agg.end());
  return dist;
}

PackingDistribution mech_order_distribution(const Instance& inst, const DistributionMode& mode,
                                            const OrderOptions& opts) {
  if (mode.kind == DistributionMode::Kind::ExactPermutations) {
    return mech_order_finalize(mech_order_skeleton(inst, opts), inst, opts);
  }
  if (mode.sample_count < 1) throw PreconditionError("sampled mode needs k >= 1");
  std::map<CyclePacking, int> counts;
  for (int run = 0; run < mode.sample_count; ++run) {
    counts[mech_order_sample(inst, mix_seed(mode.seed, run), opts)]++;
  }
  PackingDistribution dist;
  for (auto& [packing, count] : counts) {
    dist.outcomes.emplace_back(packing, rat(count, mode.sample_count));
  }
  return dist;
}

OrderExactAnalysis mech_order_exact_analysis(const Instance& inst, const OrderOptions& opts) {
  OrderExactAnalysis analysis;
  analysis.skeleton = mech_order_skeleton(inst, opts);
  analysis.distribution = mech_order_finalize(analysis.skeleton, inst, opts);
  int m = static_cast<int>(analysis.skeleton.candidates.size());
  analysis.step4_selection.assign(m, Rat(0));
  analysis.uniform_reference.assign(m, Rat(0));
  for (const auto& [selected, prob] : analysis.skeleton.step4) {
    for (int c = 0; c < m; ++c) {
      if ((selected >> c) & 1u) analysis.step4_selection[c] += prob;
    }
  }
  for (int c = 0; c < m; ++c) {
    analysis.uniform_reference[c] = rat(1, analysis.skeleton.intersections[c].size());
  }
  return analysis;
}

PackingDistribution mech_order_randomized_step1(
    const Instance& inst, const std::vector<std::pair<CyclePacking, Rat>>& step1_dist,
    const OrderOptions& opts) {
  if (step1_dist.empty()) throw PreconditionError("step-1 distribution is empty");
  int max_national = mech_nat(inst, opts.budget).size();
  Rat total = 0;
  for (const auto& [packing, prob] : step1_dist) {
    if (prob <= 0) throw PreconditionError("step-1 probabilities must be positive");
    total += prob;
    if (packing.size() != max_national) {
      throw PreconditionError("step-1 support packing is not a maximum national packing");
    }
    for (const Cycle& c : packing.cycles()) {
      if (cycle_is_international(c, inst) || !is_gamma_cycle(c, inst)) {
        throw PreconditionError("step-1 support packing contains a non-national cycle");
      }
    }
  }
  if (total != 1) throw PreconditionError("step-1 probabilities must sum to 1");

  std::map<CyclePacking, Rat> agg;
  for (const auto& [packing, prob] : step1_dist) {
    OrderSkeleton skeleton = skeleton_for_preselection(inst, packing, opts);
    PackingDistribution conditional = mech_order_finalize(skeleton, inst, opts);
    for (auto& [outcome, p] : conditional.outcomes) agg[outcome] += prob * p;
  }
  PackingDistribution dist;
  dist.outcomes.assign(agg.begin(), agg.end());
  return dist;
}

Rat expected_country_utility(const PackingDistribution& dist, int country, const Instance& inst) {
  Rat total = 0;
  for (const auto& [packing, prob] : dist.outcomes) {
    total += prob * utility(packing, country, inst);
  }
  return total;
}

Rat expected_social_welfare(const PackingDistribution& dist, const Instance& inst) {
  Rat total = 0;
  for (const auto& [packing, prob] : dist.outcomes) total += prob * packing.size();
  (void)inst;
  return total;
}

UtilityReport expected_utilities(const PackingDistribution& dist, const Instance& inst,
                                 const SolveBudget& budget) {
  UtilityReport report;
  report.expected_utility.assign(inst.country_count(), Rat(0));
  report.social_welfare = 0;
  for (const auto& [packing, prob] : dist.outcomes) {
    for (int i = 0; i < inst.country_count(); ++i) {
      report.expected_utility[i] += prob * utility(packing, i, inst);
    }
  }
  for (const Rat& u : report.expected_utility) report.social_welfare += u;
  report.opt_value = max_gamma_packing_exact(inst, budget).opt_value;
  if (report.social_welfare == 0) {
    report.ratio_is_finite = false;
  } else {
    report.ratio = Rat(report.opt_value) / report.social_welfare;
  }
  return report;
}

}  // namespace ikep
