#include "ikep/generator.hpp"

#include <algorithm>
#include <numeric>

#include "ikep/rng.hpp"

namespace ikep {

Instance gen_instance(const GenConfig& cfg) {
  if (cfg.country_sizes.empty()) throw ValidationError("gen_instance: no countries");
  for (int s : cfg.country_sizes) {
    if (s < 0) throw ValidationError("gen_instance: negative country size");
  }
  if (static_cast<int>(cfg.country_sizes.size()) != cfg.gamma.n) {
    throw ValidationError("gen_instance: gamma.n must match the number of country sizes");
  }
  auto bad = [](double p) { return !(p >= 0.0 && p <= 1.0); };
  if (bad(cfg.arc_probability_national) || bad(cfg.arc_probability_international)) {
    throw ValidationError("gen_instance: arc probabilities must lie in [0,1]");
  }

  int total = std::accumulate(cfg.country_sizes.begin(), cfg.country_sizes.end(), 0);
  std::vector<int> countries;
  countries.reserve(total);
  for (std::size_t i = 0; i < cfg.country_sizes.size(); ++i) {
    countries.insert(countries.end(), cfg.country_sizes[i], static_cast<int>(i));
  }

  DetRng rng(cfg.seed);
  std::vector<Arc> arcs;
  for (int u = 0; u < total; ++u) {
    for (int v = 0; v < total; ++v) {
      if (u == v) continue;
      double p = countries[u] == countries[v] ? cfg.arc_probability_national
                                              : cfg.arc_probability_international;
      if (rng.uniform01() < p) arcs.push_back({u, v});
    }
  }
  return Instance(total, std::move(countries), std::move(arcs), cfg.gamma);
}

std::vector<int> sizes_from_ratio(const std::vector<int>& ratio, int total) {
  if (ratio.empty() || total < 0) throw ValidationError("sizes_from_ratio: bad arguments");
  long long denom = 0;
  for (int r : ratio) {
    if (r <= 0) throw ValidationError("sizes_from_ratio: ratio parts must be positive");
    denom += r;
  }
  std::vector<int> sizes(ratio.size());
  std::vector<std::pair<long long, std::size_t>> remainders;  // (-remainder, index)
  int assigned = 0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    long long num = static_cast<long long>(total) * ratio[i];
    sizes[i] = static_cast<int>(num / denom);
    assigned += sizes[i];
    remainders.push_back({-(num % denom), i});
  }
  std::sort(remainders.begin(), remainders.end());
  for (int k = 0; k < total - assigned; ++k) {
    sizes[remainders[k % remainders.size()].second]++;
  }
  return sizes;
}

}  // namespace ikep
