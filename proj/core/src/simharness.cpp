#include "ikep/simharness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "ikep/rng.hpp"
#include "ikep/solver.hpp"

namespace ikep {

namespace {

bool wants(const ExperimentConfig& cfg, const std::string& mech) {
  return std::find(cfg.mechanisms.begin(), cfg.mechanisms.end(), mech) != cfg.mechanisms.end();
}

// numerator/denominator with the 0-denominator convention: 0/0 = 1 (the
// mechanisms agree), x/0 rendered as inf.
void set_ratio(const Rat& num, const Rat& den, std::optional<Rat>& slot, bool& finite) {
  if (den == 0) {
    if (num == 0) {
      slot = Rat(1);
    } else {
      finite = false;
      slot = Rat(0);
    }
    return;
  }
  slot = num / den;
}

std::string fixed6(const Rat& q) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", rat_double(q));
  return buffer;
}

std::string render(const std::optional<Rat>& q, bool finite) {
  if (!q.has_value()) return "";
  if (!finite) return "inf";
  return fixed6(*q);
}

ResultRow evaluate_row(const ExperimentConfig& cfg, const std::string& id,
                       const std::string& tag, const Instance& inst, std::uint64_t order_seed,
                       int max_countries) {
  ResultRow row;
  row.instance_id = id;
  row.gamma_tag = tag;
  row.utilities.assign(cfg.mechanisms.size(), std::vector<std::optional<Rat>>(max_countries));
  try {
    std::optional<PackingDistribution> dist_nat, dist_con, dist_int, dist_order;
    if (wants(cfg, "nat") || wants(cfg, "order")) {
      dist_nat = point_distribution(mech_nat(inst, cfg.order.budget));
    }
    if (wants(cfg, "con")) dist_con = point_distribution(mech_con(inst, true, cfg.order.budget));
    if (wants(cfg, "int")) dist_int = point_distribution(mech_int(inst, cfg.order.budget));
    if (wants(cfg, "order")) {
      try {
        dist_order = mech_order_distribution(inst, DistributionMode::exact_permutations(),
                                             cfg.order);
        row.order_exact = true;
      } catch (const BudgetExceededError&) {
        dist_order = mech_order_distribution(
            inst, DistributionMode::sampled(cfg.order_runs_per_instance, order_seed), cfg.order);
      }
    }

    auto social = [&](const std::optional<PackingDistribution>& d) -> std::optional<Rat> {
      if (!d) return std::nullopt;
      return expected_social_welfare(*d, inst);
    };
    if (wants(cfg, "nat")) row.sw_nat = social(dist_nat);
    row.sw_con = social(dist_con);
    row.sw_int = social(dist_int);
    row.sw_order = social(dist_order);

    // Containment invariants; violations are bugs, not data.
    if (row.sw_nat && row.sw_con && *row.sw_nat > *row.sw_con) {
      throw Error("invariant violated: SW(nat) > SW(con)");
    }
    if (row.sw_con && row.sw_int && *row.sw_con > *row.sw_int) {
      throw Error("invariant violated: SW(con) > SW(int)");
    }
    if (dist_nat && row.sw_order && expected_social_welfare(*dist_nat, inst) > *row.sw_order) {
      throw Error("invariant violated: SW(nat) > E[SW(order)]");
    }
    if (row.sw_order && row.sw_int && *row.sw_order > *row.sw_int) {
      throw Error("invariant violated: E[SW(order)] > SW(int)");
    }

    if (row.sw_order && row.sw_int) {
      set_ratio(*row.sw_order, *row.sw_int, row.ratio_order_int, row.ratio_order_int_finite);
    }
    if (row.sw_con && row.sw_int) {
      set_ratio(*row.sw_con, *row.sw_int, row.ratio_con_int, row.ratio_con_int_finite);
    }
    if (row.sw_order && row.sw_con) {
      set_ratio(*row.sw_order, *row.sw_con, row.ratio_order_con, row.ratio_order_con_finite);
    }
    if (row.sw_order && row.sw_nat) {
      set_ratio(*row.sw_order, *row.sw_nat, row.ratio_order_nat, row.ratio_order_nat_finite);
    }

    const std::optional<PackingDistribution>* dists[] = {&dist_nat, &dist_con, &dist_int,
                                                         &dist_order};
    const char* names[] = {"nat", "con", "int", "order"};
    for (std::size_t m = 0; m < cfg.mechanisms.size(); ++m) {
      for (int which = 0; which < 4; ++which) {
        if (cfg.mechanisms[m] != names[which] || !dists[which]->has_value()) continue;
        for (int i = 0; i < inst.country_count() && i < max_countries; ++i) {
          row.utilities[m][i] = expected_country_utility(dists[which]->value(), i, inst);
        }
      }
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.mechanisms = cfg.mechanisms;
  for (const auto& [id, inst] : cfg.instances) {
    result.country_count = std::max(result.country_count, inst.country_count());
  }

  struct Task {
    std::string id;
    std::string tag;
    Instance instance;
  };
  std::vector<Task> tasks;
  if (cfg.sweep.empty()) {
    for (const auto& [id, inst] : cfg.instances) tasks.push_back({id, "base", inst});
  } else {
    for (const SweepPoint& point : cfg.sweep) {
      for (const auto& [id, inst] : cfg.instances) {
        tasks.push_back({id, point.tag, inst.with_gamma(point.gamma)});
      }
    }
  }

  result.rows.assign(tasks.size(), {});
  unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      result.rows[i] = evaluate_row(cfg, tasks[i].id, tasks[i].tag, tasks[i].instance,
                                    mix_seed(cfg.seed, i), result.country_count);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // CSV: fixed column set, floats with 6 decimals, then one average row per
  // sweep tag over the rows that succeeded.
  std::ostringstream csv;
  csv << "instance_id,gamma_tag,sw_nat,sw_con,sw_int,sw_order,ratio_order_int,ratio_con_int,"
         "ratio_order_con,ratio_order_nat";
  for (const std::string& mech : cfg.mechanisms) {
    for (int i = 0; i < result.country_count; ++i) {
      csv << ",u_" << mech << "_" << i;
    }
  }
  csv << ",error\n";

  auto emit = [&](const ResultRow& row) {
    csv << row.instance_id << "," << row.gamma_tag << "," << render(row.sw_nat, true) << ","
        << render(row.sw_con, true) << "," << render(row.sw_int, true) << ","
        << render(row.sw_order, true) << ","
        << render(row.ratio_order_int, row.ratio_order_int_finite) << ","
        << render(row.ratio_con_int, row.ratio_con_int_finite) << ","
        << render(row.ratio_order_con, row.ratio_order_con_finite) << ","
        << render(row.ratio_order_nat, row.ratio_order_nat_finite);
    for (std::size_t m = 0; m < cfg.mechanisms.size(); ++m) {
      for (int i = 0; i < result.country_count; ++i) {
        csv << ",";
        if (m < row.utilities.size() && row.utilities[m][i].has_value()) {
          csv << fixed6(*row.utilities[m][i]);
        }
      }
    }
    csv << "," << row.error << "\n";
  };
  for (const ResultRow& row : result.rows) emit(row);

  std::vector<std::string> tags;
  for (const ResultRow& row : result.rows) {
    if (std::find(tags.begin(), tags.end(), row.gamma_tag) == tags.end()) {
      tags.push_back(row.gamma_tag);
    }
  }
  struct Mean {
    Rat sum = 0;
    int count = 0;
    void add(const std::optional<Rat>& x, bool finite = true) {
      if (!x || !finite) return;
      sum += *x;
      count++;
    }
    std::optional<Rat> value() const {
      if (count == 0) return std::nullopt;
      return sum / count;
    }
  };
  for (const std::string& tag : tags) {
    ResultRow avg;
    avg.instance_id = "average";
    avg.gamma_tag = tag;
    avg.utilities.assign(cfg.mechanisms.size(),
                         std::vector<std::optional<Rat>>(result.country_count));
    Mean sw_nat, sw_con, sw_int, sw_order, r_oi, r_ci, r_oc, r_on;
    std::vector<std::vector<Mean>> util(cfg.mechanisms.size(),
                                        std::vector<Mean>(result.country_count));
    bool any = false;
    for (const ResultRow& row : result.rows) {
      if (row.gamma_tag != tag || !row.error.empty()) continue;
      any = true;
      sw_nat.add(row.sw_nat);
      sw_con.add(row.sw_con);
      sw_int.add(row.sw_int);
      sw_order.add(row.sw_order);
      r_oi.add(row.ratio_order_int, row.ratio_order_int_finite);
      r_ci.add(row.ratio_con_int, row.ratio_con_int_finite);
      r_oc.add(row.ratio_order_con, row.ratio_order_con_finite);
      r_on.add(row.ratio_order_nat, row.ratio_order_nat_finite);
      for (std::size_t m = 0; m < cfg.mechanisms.size(); ++m) {
        for (int i = 0; i < result.country_count; ++i) util[m][i].add(row.utilities[m][i]);
      }
    }
    if (!any) continue;
    avg.sw_nat = sw_nat.value();
    avg.sw_con = sw_con.value();
    avg.sw_int = sw_int.value();
    avg.sw_order = sw_order.value();
    avg.ratio_order_int = r_oi.value();
    avg.ratio_con_int = r_ci.value();
    avg.ratio_order_con = r_oc.value();
    avg.ratio_order_nat = r_on.value();
    for (std::size_t m = 0; m < cfg.mechanisms.size(); ++m) {
      for (int i = 0; i < result.country_count; ++i) {
        avg.utilities[m][i] = util[m][i].value();
      }
    }
    emit(avg);
  }

  result.csv = csv.str();
  return result;
}

}  // namespace ikep
