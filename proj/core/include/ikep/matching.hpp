#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ikep {

/// Maximum cardinality matching in a general undirected graph via Edmonds'
/// blossom shrinking.  Returns mate[v] (-1 if v is unmatched).  Deterministic:
/// vertices are scanned in index order.
std::vector<int> max_cardinality_matching(int n, const std::vector<std::pair<int, int>>& edges);

/// Maximum weight perfect matching on a dense bipartite graph given as an
/// n x n weight matrix (Hungarian algorithm).  Entries may be negative;
/// use a large negative weight for forbidden pairs.  Returns the matched
/// column for every row.
std::vector<int> max_weight_perfect_matching(const std::vector<std::vector<long long>>& weights);

}  // namespace ikep
