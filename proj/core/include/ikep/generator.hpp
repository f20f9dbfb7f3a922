#pragma once

#include <cstdint>
#include <vector>

#include "ikep/model.hpp"

namespace ikep {

/// Seeded Erdos-Renyi-style instance generation with separate national and
/// international arc densities.  The same config always produces the same
/// instance, byte for byte.
struct GenConfig {
  std::vector<int> country_sizes;
  double arc_probability_national = 0.0;
  double arc_probability_international = 0.0;
  GammaParams gamma;
  std::uint64_t seed = 0;
};

Instance gen_instance(const GenConfig& cfg);

/// Splits `total` into parts proportional to `ratio` (largest remainder,
/// ties to the lower index); e.g. ratio 3:2:1 of 300 gives 150,100,50.
std::vector<int> sizes_from_ratio(const std::vector<int>& ratio, int total);

}  // namespace ikep
