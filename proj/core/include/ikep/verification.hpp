#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ikep/mechanisms.hpp"
#include "ikep/model.hpp"
#include "ikep/rational.hpp"

namespace ikep {

/// A mechanism under test: maps an instance (honest or misreported) to its
/// exact outcome distribution.
using MechanismFn = std::function<PackingDistribution(const Instance&)>;

/// Standard mechanisms by name: "nat", "con", "int", "order" and the
/// deliberately broken "order2seg" (order with two-segment substitutes).
MechanismFn mechanism_by_name(const std::string& name, const OrderOptions& opts = {});

/// Per-country optimum over the national pool alone (size of a maximum
/// Gamma-cycle packing of G[V_i] under ncl_i).
std::vector<int> nat_values(const Instance& inst, const SolveBudget& budget = {});

// --- Individual rationality --------------------------------------------------

struct IrReport {
  bool holds = true;
  std::vector<int> nat;
  std::vector<Rat> expected_utility;
  std::vector<Rat> slack;          // expected_utility - nat, per country
  std::vector<int> violations;     // countries with negative slack
};

IrReport check_ir(const MechanismFn& mech, const Instance& inst, const SolveBudget& budget = {});

// --- Incentive compatibility --------------------------------------------------

/// All parameter sets a country could report instead of the honest one:
/// every (iss', isn') with 1 <= iss' <= ceiling(iss) and
/// 1 <= isn' <= ceiling(isn).  Finite honest values are their own ceiling;
/// unbounded ones clamp to what a cycle of length <= icl could use
/// (segment size icl-1 capped at the country size, segment count icl/2),
/// with icl itself clamped to |V| when unbounded.  Includes the honest pair.
struct MisreportSpace {
  int country = 0;
  std::vector<GammaParams> variants;
};

MisreportSpace enumerate_misreports(const GammaParams& g, int country, const Instance& inst);

struct IcViolation {
  int country = 0;
  GammaParams variant;
  Rat honest_utility;
  Rat misreport_utility;
};

struct IcReport {
  bool holds = true;
  int evaluated = 0;  // (country, variant) pairs compared
  std::vector<IcViolation> violations;
};

IcReport check_ic(const MechanismFn& mech, const Instance& inst);

// --- National cycle limit manipulation ----------------------------------------

struct NclManipulationReport {
  int country = 0;
  Bound reported_ncl;
  Bound variant_ncl;
  Rat honest_social_welfare;
  Rat variant_social_welfare;
  Rat honest_covered;   // expected covered pairs of the manipulating country
  Rat variant_covered;
  bool coverage_gain = false;  // the manipulation helped that country
};

NclManipulationReport check_ncl_manipulation(const Instance& inst, int country, Bound ncl_variant,
                                             const MechanismFn& mech);
NclManipulationReport check_ncl_manipulation(const Instance& inst, int country, Bound ncl_variant);

// --- Approximation bound -------------------------------------------------------

struct ApproxBoundReport {
  bool holds = true;
  Rat social_welfare;
  int opt = 0;
  int c_int = 0;
  int d_star = 0;
  int bound = 1;  // max(c_int, d_star, 1)
  bool ratio_is_finite = true;
  Rat realized_ratio;  // opt / SW when SW > 0
};

/// Checks SW(order mechanism, exact distribution) >= opt / max(c_int, d*, 1).
ApproxBoundReport check_approx_bound(const Instance& inst, const OrderOptions& opts = {});

// --- Perfect packings ----------------------------------------------------------

struct PerfectPackingResult {
  bool exists = false;
  CyclePacking witness;
};

/// Exhaustive search for a Gamma-cycle packing covering every vertex.
/// Budget: at most 20 Gamma-cycles or at most 14 vertices.
PerfectPackingResult has_perfect_packing(const Instance& inst);

// --- Desk-scale impossibility evidence ------------------------------------------

/// Exhausts the Gamma-cycle packings and scans a rational probability grid
/// over the maximum ones; returns true when some grid distribution is
/// individually rational (so efficiency and IR are compatible on this
/// instance at grid resolution).
bool exists_efficient_ir_distribution(const Instance& inst, int grid_steps = 100);

/// Grid scan over nonempty-outcome distributions: returns true when some
/// grid distribution is IC against every single-country misreport, where a
/// nonempty mechanism on a misreported instance may answer with any
/// distribution over the nonempty packings of that instance (the most
/// favorable one is assumed).  Evidence at grid resolution, not proof.
bool exists_nonempty_ic_distribution(const Instance& inst, int grid_steps = 100);

}  // namespace ikep
