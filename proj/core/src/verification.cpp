#include "ikep/verification.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace ikep {

namespace {

// Order-mechanism wrapper that reuses the skeleton (pre-selection, X(G-hat)
// and the greedy-selection distribution) across calls whose graph, country
// assignment, ncl and icl agree.  iss/isn misreports hit this fast path.
struct CachedOrderMechanism {
  OrderOptions opts;
  std::shared_ptr<std::mutex> lock = std::make_shared<std::mutex>();
  struct Key {
    int vertex_count;
    std::vector<int> countries;
    std::vector<Arc> arcs;
    std::vector<Bound> ncl;
    Bound icl;
    bool operator==(const Key&) const = default;
  };
  std::shared_ptr<std::pair<Key, OrderSkeleton>> cache = nullptr;

  PackingDistribution operator()(const Instance& inst) {
    Key key{inst.vertex_count(), inst.countries(), inst.arcs(), inst.gamma().ncl,
            inst.gamma().icl};
    std::lock_guard<std::mutex> guard(*lock);
    if (!cache || !(cache->first == key)) {
      cache = std::make_shared<std::pair<Key, OrderSkeleton>>(key,
                                                              mech_order_skeleton(inst, opts));
    }
    return mech_order_finalize(cache->second, inst, opts);
  }
};

}  // namespace

MechanismFn mechanism_by_name(const std::string& name, const OrderOptions& opts) {
  SolveBudget budget = opts.budget;
  if (name == "nat") {
    return [budget](const Instance& inst) { return point_distribution(mech_nat(inst, budget)); };
  }
  if (name == "con") {
    return [budget](const Instance& inst) {
      return point_distribution(mech_con(inst, true, budget));
    };
  }
  if (name == "int") {
    return [budget](const Instance& inst) { return point_distribution(mech_int(inst, budget)); };
  }
  if (name == "order") {
    return CachedOrderMechanism{opts};
  }
  if (name == "order2seg") {
    OrderOptions relaxed = opts;
    relaxed.substitute_max_segments = 2;
    return CachedOrderMechanism{relaxed};
  }
  throw ValidationError("unknown mechanism: " + name);
}

std::vector<int> nat_values(const Instance& inst, const SolveBudget& budget) {
  std::vector<int> values(inst.country_count(), 0);
  for (int country = 0; country < inst.country_count(); ++country) {
    if (inst.gamma().ncl[country] < Bound::finite(2)) continue;
    if (inst.country_vertices(country).empty()) continue;
    VertexSet pool = VertexSet::of(inst, inst.country_vertices(country));
    values[country] = max_gamma_packing_exact(inst, budget, &pool).opt_value;
  }
  return values;
}

IrReport check_ir(const MechanismFn& mech, const Instance& inst, const SolveBudget& budget) {
  IrReport report;
  report.nat = nat_values(inst, budget);
  PackingDistribution dist = mech(inst);
  for (int i = 0; i < inst.country_count(); ++i) {
    Rat u = expected_country_utility(dist, i, inst);
    report.expected_utility.push_back(u);
    report.slack.push_back(u - report.nat[i]);
    if (report.slack.back() < 0) {
      report.holds = false;
      report.violations.push_back(i);
    }
  }
  return report;
}

MisreportSpace enumerate_misreports(const GammaParams& g, int country, const Instance& inst) {
  if (country < 0 || country >= g.n) throw ValidationError("country index out of range");
  MisreportSpace space;
  space.country = country;
  space.variants.push_back(g);  // honest report first

  std::int64_t icl_eff = g.icl.finite_or(inst.vertex_count());
  std::int64_t pool = static_cast<std::int64_t>(inst.country_vertices(country).size());
  std::int64_t iss_ceiling =
      g.iss[country].is_finite()
          ? g.iss[country].value()
          : std::max<std::int64_t>(0, std::min(icl_eff - 1, pool));
  std::int64_t isn_ceiling =
      g.isn[country].is_finite() ? g.isn[country].value() : std::max<std::int64_t>(0, icl_eff / 2);

  for (std::int64_t iss = 1; iss <= iss_ceiling; ++iss) {
    for (std::int64_t isn = 1; isn <= isn_ceiling; ++isn) {
      GammaParams variant =
          g.with_iss(country, Bound::finite(iss)).with_isn(country, Bound::finite(isn));
      if (!(variant == g)) space.variants.push_back(variant);
    }
  }
  return space;
}

IcReport check_ic(const MechanismFn& mech, const Instance& inst) {
  IcReport report;
  PackingDistribution honest = mech(inst);
  std::vector<Rat> honest_utility(inst.country_count());
  for (int i = 0; i < inst.country_count(); ++i) {
    honest_utility[i] = expected_country_utility(honest, i, inst);
  }
  for (int country = 0; country < inst.country_count(); ++country) {
    MisreportSpace space = enumerate_misreports(inst.gamma(), country, inst);
    for (const GammaParams& variant : space.variants) {
      if (variant == inst.gamma()) continue;
      PackingDistribution dist = mech(inst.with_gamma(variant));
      // Utilities are transplant counts, so the true preferences are
      // evaluated on the true instance regardless of the report.
      Rat u = expected_country_utility(dist, country, inst);
      report.evaluated++;
      if (u > honest_utility[country]) {
        report.holds = false;
        report.violations.push_back({country, variant, honest_utility[country], u});
      }
    }
  }
  return report;
}

NclManipulationReport check_ncl_manipulation(const Instance& inst, int country, Bound ncl_variant,
                                             const MechanismFn& mech) {
  if (country < 0 || country >= inst.country_count()) {
    throw ValidationError("country index out of range");
  }
  if (ncl_variant > inst.gamma().ncl[country]) {
    throw PreconditionError("ncl manipulation must report a lower value");
  }
  NclManipulationReport report;
  report.country = country;
  report.reported_ncl = inst.gamma().ncl[country];
  report.variant_ncl = ncl_variant;

  PackingDistribution honest = mech(inst);
  Instance lowered = inst.with_gamma(inst.gamma().with_ncl(country, ncl_variant));
  PackingDistribution variant = mech(lowered);

  report.honest_social_welfare = expected_social_welfare(honest, inst);
  report.variant_social_welfare = expected_social_welfare(variant, inst);
  report.honest_covered = expected_country_utility(honest, country, inst);
  report.variant_covered = expected_country_utility(variant, country, inst);
  report.coverage_gain = report.variant_covered > report.honest_covered;
  return report;
}

NclManipulationReport check_ncl_manipulation(const Instance& inst, int country,
                                             Bound ncl_variant) {
  return check_ncl_manipulation(inst, country, ncl_variant, mechanism_by_name("order"));
}

ApproxBoundReport check_approx_bound(const Instance& inst, const OrderOptions& opts) {
  ApproxBoundReport report;
  PackingDistribution dist = mech_order_distribution(inst, DistributionMode::exact_permutations(),
                                                     opts);
  report.social_welfare = expected_social_welfare(dist, inst);
  report.opt = max_gamma_packing_exact(inst, opts.budget).opt_value;
  InstanceStats stats = instance_stats(inst, opts.budget.enumeration);
  report.c_int = stats.c_int;
  report.d_star = stats.d_star;
  report.bound = std::max({stats.c_int, stats.d_star, 1});
  report.holds = report.social_welfare * report.bound >= report.opt;
  if (report.social_welfare > 0) {
    report.realized_ratio = Rat(report.opt) / report.social_welfare;
  } else {
    report.ratio_is_finite = false;
  }
  return report;
}

PerfectPackingResult has_perfect_packing(const Instance& inst) {
  std::vector<Cycle> cycles = enumerate_gamma_cycles(inst).all_gamma_cycles();
  if (cycles.size() > 20 && inst.vertex_count() > 14) {
    throw BudgetExceededError("has_perfect_packing: instance exceeds the exhaustive budget");
  }
  std::vector<std::vector<int>> covering(inst.vertex_count());
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    for (VertexId v : cycles[i].vertices()) covering[v].push_back(i);
  }
  std::vector<bool> covered(inst.vertex_count(), false);
  std::vector<int> chosen;
  std::int64_t nodes = 0;

  std::function<bool()> cover = [&]() -> bool {
    if (++nodes > 10'000'000) {
      throw BudgetExceededError("has_perfect_packing: search budget exceeded");
    }
    int v = 0;
    while (v < inst.vertex_count() && covered[v]) ++v;
    if (v == inst.vertex_count()) return true;
    for (int idx : covering[v]) {
      bool free = true;
      for (VertexId w : cycles[idx].vertices()) free = free && !covered[w];
      if (!free) continue;
      for (VertexId w : cycles[idx].vertices()) covered[w] = true;
      chosen.push_back(idx);
      if (cover()) return true;
      chosen.pop_back();
      for (VertexId w : cycles[idx].vertices()) covered[w] = false;
    }
    return false;
  };

  PerfectPackingResult result;
  if (inst.vertex_count() == 0) {
    result.exists = true;
    return result;
  }
  result.exists = cover();
  if (result.exists) {
    std::vector<Cycle> witness;
    for (int idx : chosen) witness.push_back(cycles[idx]);
    result.witness = CyclePacking(std::move(witness));
  }
  return result;
}

namespace {

// Enumerates grid distributions (k_1,...,k_m) with sum k_i = steps and calls
// visit with the weights; returns true as soon as visit does.
bool scan_grid(int m, int steps, std::vector<int>& weights,
               const std::function<bool(const std::vector<int>&)>& visit) {
  if (m == 1) {
    weights.push_back(steps);
    bool hit = visit(weights);
    weights.pop_back();
    return hit;
  }
  for (int k = 0; k <= steps; ++k) {
    weights.push_back(k);
    if (scan_grid(m - 1, steps - k, weights, visit)) {
      weights.pop_back();
      return true;
    }
    weights.pop_back();
  }
  return false;
}

}  // namespace

bool exists_efficient_ir_distribution(const Instance& inst, int grid_steps) {
  std::vector<CyclePacking> packings = enumerate_all_packings(inst);
  int opt = 0;
  for (const CyclePacking& p : packings) opt = std::max(opt, p.size());
  std::vector<CyclePacking> maxima;
  for (const CyclePacking& p : packings) {
    if (p.size() == opt) maxima.push_back(p);
  }
  std::vector<int> nat = nat_values(inst);
  if (static_cast<int>(maxima.size()) > 4) {
    throw BudgetExceededError("efficient+IR grid scan supports at most 4 maximum packings");
  }
  std::vector<int> weights;
  return scan_grid(static_cast<int>(maxima.size()), grid_steps, weights,
                   [&](const std::vector<int>& w) {
                     for (int i = 0; i < inst.country_count(); ++i) {
                       Rat u = 0;
                       for (std::size_t j = 0; j < maxima.size(); ++j) {
                         u += rat(w[j], grid_steps) * utility(maxima[j], i, inst);
                       }
                       if (u < nat[i]) return false;
                     }
                     return true;
                   });
}

bool exists_nonempty_ic_distribution(const Instance& inst, int grid_steps) {
  std::vector<CyclePacking> packings = enumerate_all_packings(inst);
  std::vector<CyclePacking> nonempty;
  for (const CyclePacking& p : packings) {
    if (!p.empty()) nonempty.push_back(p);
  }
  if (nonempty.empty()) return false;  // nonemptiness itself is impossible
  if (static_cast<int>(nonempty.size()) > 4) {
    throw BudgetExceededError("nonempty+IC grid scan supports at most 4 nonempty packings");
  }

  // For each country and misreport, the least utility any nonempty mechanism
  // could hand that country on the misreported instance.  If even that
  // exceeds the honest utility, the misreport is always profitable.
  struct Threat {
    int country;
    Rat forced_minimum;
  };
  std::vector<Threat> threats;
  for (int country = 0; country < inst.country_count(); ++country) {
    MisreportSpace space = enumerate_misreports(inst.gamma(), country, inst);
    for (const GammaParams& variant : space.variants) {
      if (variant == inst.gamma()) continue;
      Instance misreported = inst.with_gamma(variant);
      std::vector<CyclePacking> options = enumerate_all_packings(misreported);
      bool any = false;
      int minimum = 0;
      for (const CyclePacking& p : options) {
        if (p.empty() || !is_gamma_packing(p, misreported)) continue;
        int u = utility(p, country, inst);
        minimum = any ? std::min(minimum, u) : u;
        any = true;
      }
      if (any) threats.push_back({country, Rat(minimum)});
    }
  }

  std::vector<int> weights;
  return scan_grid(static_cast<int>(nonempty.size()), grid_steps, weights,
                   [&](const std::vector<int>& w) {
                     std::vector<Rat> honest(inst.country_count(), Rat(0));
                     for (int i = 0; i < inst.country_count(); ++i) {
                       for (std::size_t j = 0; j < nonempty.size(); ++j) {
                         honest[i] += rat(w[j], grid_steps) * utility(nonempty[j], i, inst);
                       }
                     }
                     for (const Threat& t : threats) {
                       if (t.forced_minimum > honest[t.country]) return false;
                     }
                     return true;
                   });
}

}  // namespace ikep
