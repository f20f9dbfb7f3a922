#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ikep/enumeration.hpp"
#include "ikep/model.hpp"

namespace ikep {

enum class SolveMethod { Exact, BruteForce, MatchingTwoCycles, UnboundedCycleCover };

std::string to_string(SolveMethod m);

struct SolveResult {
  CyclePacking packing;
  int opt_value = 0;
  SolveMethod method = SolveMethod::Exact;
  std::int64_t node_count = 0;
};

struct SolveBudget {
  std::int64_t max_nodes = 50'000'000;
  EnumerationBudget enumeration;
};

/// Maximum-size Gamma-cycle packing, solved exactly as a maximum-weight
/// independent set on the cycle conflict graph (weight = cycle length,
/// conflict = shared vertex) with branch and bound.  Among maximum packings
/// the lexicographically smallest sorted cycle list is returned, so the
/// result is deterministic.
SolveResult max_gamma_packing_exact(const Instance& inst, const SolveBudget& budget = {},
                                    const VertexSet* restrict_to = nullptr);

/// Exhaustive subset enumeration over Gamma-cycles; refuses to run on more
/// than 20 of them.  Test oracle, same tie-break as the exact solver.
SolveResult brute_force_opt(const Instance& inst, const VertexSet* restrict_to = nullptr);

/// All Gamma-cycle packings of the instance including the empty one.  The
/// number of Gamma-cycles is capped (default 20) since the output can be
/// exponential.
std::vector<CyclePacking> enumerate_all_packings(const Instance& inst, int max_cycles = 20);

/// Complexity classification of Max Gamma-Cycle Packing for a fixed
/// parameter set: one of seven polynomial cases or NP-hard.  When several
/// cases apply the lowest-numbered one is reported.
struct DichotomyCase {
  bool poly = false;
  int case_number = 0;  // 1..7 when poly
  std::string description;
};

DichotomyCase classify_gamma(const GammaParams& g);

/// Polynomial solver for parameter sets where every Gamma-cycle has length
/// at most 2 (cases 3-5, and cases 1-2 with all national limits in {0,2}):
/// maximum cardinality matching on the pairwise-exchange graph.
SolveResult solve_poly_two_cycles(const Instance& inst);

/// Polynomial solver for cases 6-7: split each vertex into a left/right
/// copy, give weight 1 to admissible arcs (case 6: international arcs only;
/// case 7: all arcs) and weight 0 to staying single, then take a maximum
/// weight perfect matching; the weight-1 edges decompose into cycles.
SolveResult solve_poly_unbounded(const Instance& inst);

/// Dispatches on classify_gamma, including the mixed per-country forms of
/// cases 1-2; throws PreconditionError when the parameter set is NP-hard.
SolveResult solve_poly_auto(const Instance& inst);

}  // namespace ikep
