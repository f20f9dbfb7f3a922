#pragma once

#include <cstdint>
#include <vector>

#include "ikep/model.hpp"

namespace ikep {

struct EnumerationBudget {
  /// Hard cap on emitted cycles; exceeding it throws EnumerationOverflowError.
  std::int64_t max_cycles = 2'000'000;
};

/// Every cycle family of an instance, canonically ordered:
///  - national Gamma-cycles per country,
///  - X = all international cycles of length <= icl (not necessarily
///    Gamma-cycles),
///  - the subset of X that are Gamma-cycles,
///  - for each cycle in X, the indices of cycles in X sharing a vertex with
///    it (itself included).
struct CycleCatalog {
  std::vector<std::vector<Cycle>> national_gamma;
  std::vector<Cycle> international_all;
  std::vector<Cycle> international_gamma;
  std::vector<std::vector<int>> intersection_index;

  /// National and international Gamma-cycles merged, canonical order.
  std::vector<Cycle> all_gamma_cycles() const;
};

/// c_nat / c_int: length of a largest national / international Gamma-cycle
/// (0 when none exists).  d_star: the largest number of international
/// Gamma-cycles sharing at least one vertex with a single international
/// Gamma-cycle, the cycle itself included (0 when there are none).
struct InstanceStats {
  int c_nat = 0;
  int c_int = 0;
  int d_star = 0;
};

/// Simple directed cycles with at least one international arc and length at
/// most length_cap (unbounded caps at the vertex count).  Canonical order,
/// no duplicates.  restrict_to limits the search to an induced subgraph.
std::vector<Cycle> enumerate_international_cycles(const Instance& inst, Bound length_cap,
                                                  const EnumerationBudget& budget = {},
                                                  const VertexSet* restrict_to = nullptr);

/// Simple cycles inside one country's pool, length at most length_cap.
std::vector<Cycle> enumerate_national_cycles(const Instance& inst, int country, Bound length_cap,
                                             const EnumerationBudget& budget = {},
                                             const VertexSet* restrict_to = nullptr);

CycleCatalog enumerate_gamma_cycles(const Instance& inst, const EnumerationBudget& budget = {},
                                    const VertexSet* restrict_to = nullptr);

/// Substitutes for a turnable cycle: international Gamma-cycles whose vertex
/// set is a subset of c's and that have at most one segment per country.
/// c is turnable iff the result is nonempty.
std::vector<Cycle> substitutes(const Cycle& c, const Instance& inst);

/// Test-harness variant relaxing the per-country segment cap; the shipping
/// rule is max_segments_per_country = 1.
std::vector<Cycle> substitutes_with_segment_cap(const Cycle& c, const Instance& inst,
                                                int max_segments_per_country);

InstanceStats instance_stats(const Instance& inst, const EnumerationBudget& budget = {});
InstanceStats stats_from_catalog(const Instance& inst, const CycleCatalog& catalog);

}  // namespace ikep
