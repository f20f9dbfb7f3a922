#include "ikep/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "ikep/errors.hpp"

namespace ikep {

namespace {

// State for one augmenting-path search of the blossom algorithm.
struct BlossomSearch {
  int n;
  const std::vector<std::vector<int>>& adj;
  std::vector<int>& match;
  std::vector<int> parent, base;
  std::vector<bool> blossom, used;

  BlossomSearch(int n_, const std::vector<std::vector<int>>& adj_, std::vector<int>& match_)
      : n(n_), adj(adj_), match(match_), parent(n, -1), base(n), blossom(n), used(n, false) {}

  int lowest_common_base(int a, int b) {
    std::vector<bool> seen(n, false);
    for (;;) {
      a = base[a];
      seen[a] = true;
      if (match[a] == -1) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = true;
      blossom[base[match[v]]] = true;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  }

  // BFS from an unmatched root; returns the far end of an augmenting path.
  int find_path(int root) {
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(used.begin(), used.end(), false);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          // Odd cycle found: contract the blossom around the common base.
          int b = lowest_common_base(v, to);
          std::fill(blossom.begin(), blossom.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (int i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = b;
              if (!used[i]) {
                used[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;
          used[match[to]] = true;
          q.push(match[to]);
        }
      }
    }
    return -1;
  }
};

}  // namespace

std::vector<int> max_cardinality_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw ValidationError("max_cardinality_matching: bad edge");
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<int> match(n, -1);
  for (int v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    BlossomSearch search(n, adj, match);
    int end = search.find_path(v);
    while (end != -1) {  // flip the augmenting path
      int prev = search.parent[end];
      int next = match[prev];
      match[end] = prev;
      match[prev] = end;
      end = next;
    }
  }
  return match;
}

std::vector<int> max_weight_perfect_matching(const std::vector<std::vector<long long>>& weights) {
  int n = static_cast<int>(weights.size());
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n) {
      throw ValidationError("max_weight_perfect_matching: matrix must be square");
    }
  }
  if (n == 0) return {};

  // Classic potentials formulation on costs = -weights, 1-indexed with a
  // virtual row/column 0.
  const long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match_col(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match_col[0] = i;
    int j0 = 0;
    std::vector<long long> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = match_col[j0], j1 = -1;
      long long delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        long long cur = -weights[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      int j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match_col[j] != 0) row_to_col[match_col[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace ikep
