#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ikep/generator.hpp"
#include "ikep/mechanisms.hpp"
#include "ikep/model.hpp"
#include "ikep/rational.hpp"

namespace ikep {

struct SweepPoint {
  std::string tag;
  GammaParams gamma;
};

/// Batch comparison of the mechanisms over an instance corpus, optionally
/// repeated for every sweep point (each sweep point replaces Gamma on every
/// corpus instance).  Deterministic given the seeds inside the corpus.
struct ExperimentConfig {
  std::vector<std::pair<std::string, Instance>> instances;  // (id, instance)
  std::vector<std::string> mechanisms{"nat", "con", "int", "order"};
  /// Sampled runs averaged per instance when the exact order distribution
  /// is out of reach (candidate count above the exact cap).
  int order_runs_per_instance = 5;
  std::vector<SweepPoint> sweep;  // empty = evaluate instances as-is
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware concurrency
  OrderOptions order;
};

struct ResultRow {
  std::string instance_id;
  std::string gamma_tag;
  std::optional<Rat> sw_nat, sw_con, sw_int, sw_order;
  // opt / SW style ratios; nullopt when the denominator mechanism was not
  // run, "inf" rendered when the denominator is 0 and the numerator is not.
  std::optional<Rat> ratio_order_int, ratio_con_int, ratio_order_con, ratio_order_nat;
  bool ratio_order_int_finite = true, ratio_con_int_finite = true, ratio_order_con_finite = true,
       ratio_order_nat_finite = true;
  std::vector<std::vector<std::optional<Rat>>> utilities;  // [mechanism][country]
  bool order_exact = false;
  std::string error;  // nonempty when the instance failed; other fields unset
};

struct ExperimentResult {
  std::vector<std::string> mechanisms;
  int country_count = 0;
  std::vector<ResultRow> rows;
  std::string csv;  // full CSV including the header and per-sweep averages
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace ikep
