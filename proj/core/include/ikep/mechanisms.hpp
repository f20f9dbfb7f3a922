#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ikep/model.hpp"
#include "ikep/rational.hpp"
#include "ikep/solver.hpp"

namespace ikep {

/// Output model of a randomized mechanism: a finite distribution over
/// Gamma-cycle packings.  Probabilities are positive exact rationals summing
/// to 1; the empty packing is a legal outcome.
struct PackingDistribution {
  std::vector<std::pair<CyclePacking, Rat>> outcomes;  // sorted by packing

  /// Throws ValidationError if probabilities are invalid or an outcome is
  /// not a Gamma-cycle packing of the instance.
  void validate(const Instance& inst) const;
};

struct UtilityReport {
  std::vector<Rat> expected_utility;  // per country
  Rat social_welfare;
  int opt_value = 0;
  /// opt / SW; unbounded (ratio_is_finite = false) when SW = 0.
  bool ratio_is_finite = true;
  Rat ratio;
};

struct OrderOptions {
  /// Substitutes may use at most this many segments per country.  The
  /// shipping rule is 1; larger values exist only so the incentive checks
  /// can demonstrate why 1 is required.
  int substitute_max_segments = 1;
  /// Exact-mode cap on |X(G-hat)| (the candidate international cycles).
  int exact_candidate_cap = 9;
  SolveBudget budget;
};

// --- Deterministic mechanisms ----------------------------------------------

/// Union of per-country maximum national Gamma-cycle packings, canonically
/// tie-broken.  Depends only on the graph and ncl.
CyclePacking mech_nat(const Instance& inst, const SolveBudget& budget = {});

/// Maximum Gamma-cycle packing of the merged pool.
CyclePacking mech_int(const Instance& inst, const SolveBudget& budget = {});

/// mech_nat first, then a maximum Gamma-cycle packing among the uncovered
/// vertices.  The second stage admits national cycles by default; pass
/// false to restrict it to international cycles.
CyclePacking mech_con(const Instance& inst, bool national_in_second_stage = true,
                      const SolveBudget& budget = {});

// --- The randomized order mechanism ----------------------------------------

/// One run: pre-select the national packing, shuffle the international
/// candidate cycles of the reduced graph with the seeded generator, add
/// vertex-disjoint cycles greedily, then keep / substitute / drop.  The same
/// seed always yields the same packing.
CyclePacking mech_order_sample(const Instance& inst, std::uint64_t seed,
                               const OrderOptions& opts = {});

/// The Gamma-independent part of the order mechanism: the pre-selected
/// national packing, the candidate list X(G-hat), the exact distribution of
/// the greedy selection over a uniformly random candidate order, and the
/// candidate intersection lists.  Reusable across iss/isn misreports, which
/// change none of these.
struct OrderSkeleton {
  CyclePacking preselected;
  std::vector<Cycle> candidates;                       // canonical order
  std::vector<std::pair<std::uint32_t, Rat>> step4;    // selected-set bitmask -> probability
  std::vector<std::vector<int>> intersections;         // X_C as candidate indices
};

OrderSkeleton mech_order_skeleton(const Instance& inst, const OrderOptions& opts = {});

/// Applies the Gamma-dependent filtering (keep Gamma-cycles, replace
/// turnable cycles by a uniformly random substitute, drop the rest) to a
/// skeleton and aggregates the exact outcome distribution.
PackingDistribution mech_order_finalize(const OrderSkeleton& skeleton, const Instance& inst,
                                        const OrderOptions& opts = {});

struct DistributionMode {
  enum class Kind { ExactPermutations, Sampled };
  Kind kind = Kind::ExactPermutations;
  int sample_count = 0;
  std::uint64_t seed = 0;

  static DistributionMode exact_permutations() { return {}; }
  static DistributionMode sampled(int k, std::uint64_t seed) {
    return {Kind::Sampled, k, seed};
  }
};

/// Exact mode enumerates the candidate-order process (equivalent to
/// averaging over every permutation of X(G-hat)) and branches exactly over
/// substitute choices; sampled mode aggregates k seeded runs with
/// probabilities count/k.
PackingDistribution mech_order_distribution(const Instance& inst, const DistributionMode& mode,
                                            const OrderOptions& opts = {});

/// Exact distribution plus the per-candidate selection probabilities
/// realized by the greedy step, next to the 1/|X_C| reference values.
struct OrderExactAnalysis {
  OrderSkeleton skeleton;
  PackingDistribution distribution;
  std::vector<Rat> step4_selection;    // per candidate
  std::vector<Rat> uniform_reference;  // 1/|X_C| per candidate
};

OrderExactAnalysis mech_order_exact_analysis(const Instance& inst, const OrderOptions& opts = {});

/// Variant with a randomized first step: a caller-supplied distribution over
/// maximum national packings; the rest of the mechanism runs exactly.
/// Every support packing must be a maximum national Gamma-cycle packing.
PackingDistribution mech_order_randomized_step1(
    const Instance& inst, const std::vector<std::pair<CyclePacking, Rat>>& step1_dist,
    const OrderOptions& opts = {});

/// Exact per-country expectations, social welfare and the opt/SW ratio
/// (opt from the exact solver).
UtilityReport expected_utilities(const PackingDistribution& dist, const Instance& inst,
                                 const SolveBudget& budget = {});

/// Point distribution helper for the deterministic mechanisms.
PackingDistribution point_distribution(CyclePacking p);

Rat expected_country_utility(const PackingDistribution& dist, int country, const Instance& inst);
Rat expected_social_welfare(const PackingDistribution& dist, const Instance& inst);

}  // namespace ikep
