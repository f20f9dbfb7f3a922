#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ikep/bound.hpp"
#include "ikep/errors.hpp"

namespace ikep {

/// Vertices are dense indices 0..|V|-1; each one is a recipient-donor pair
/// belonging to exactly one country.
using VertexId = int;

using Arc = std::pair<VertexId, VertexId>;

/// Country-specific parameter set Gamma = (n, icl, ncl, iss, isn):
///   n    number of countries,
///   icl  international cycle length limit (shared),
///   ncl  per-country national cycle length limit,
///   iss  per-country international segment size limit,
///   isn  per-country international segment number limit.
///
/// icl and ncl_i may not be 1 (self-loops are excluded, so no cycle has
/// length 1 and a limit of 1 would be meaningless).  iss_i/isn_i below 1
/// model a country that refuses international exchange; validate() flags
/// them as warnings because the standing assumption is participation.
struct GammaParams {
  int n = 1;
  Bound icl;
  std::vector<Bound> ncl;
  std::vector<Bound> iss;
  std::vector<Bound> isn;

  GammaParams() = default;
  GammaParams(int n_, Bound icl_, std::vector<Bound> ncl_, std::vector<Bound> iss_,
              std::vector<Bound> isn_);

  /// Non-fatal advisories (iss/isn below 1).
  std::vector<std::string> validate() const;

  GammaParams with_icl(Bound v) const;
  GammaParams with_ncl(int country, Bound v) const;
  GammaParams with_iss(int country, Bound v) const;
  GammaParams with_isn(int country, Bound v) const;

  bool operator==(const GammaParams&) const = default;
};

/// A simple directed cycle stored in canonical rotation: the vertex sequence
/// is rotated so that the smallest vertex id comes first.  Two cycles given
/// in different rotations therefore compare equal.
class Cycle {
 public:
  /// Canonicalizes; throws ValidationError on duplicates or length < 2.
  explicit Cycle(std::vector<VertexId> vertices);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  int length() const { return static_cast<int>(vertices_.size()); }
  bool contains(VertexId v) const;

  bool operator==(const Cycle&) const = default;
  auto operator<=>(const Cycle&) const = default;

  std::string to_string() const;

 private:
  std::vector<VertexId> vertices_;
};

/// Convenience wrapper matching the operation vocabulary.
Cycle canonicalize_cycle(std::vector<VertexId> seq);

/// Maximal run of same-country vertices along a cycle's cyclic order.
struct Segment {
  int country = 0;
  int size = 0;
  bool operator==(const Segment&) const = default;
};

/// A vertex-disjoint set of cycles.  Cycles are kept sorted canonically, so
/// packings with the same cycles compare equal; size() is the total number
/// of arcs, i.e. the number of transplants.
class CyclePacking {
 public:
  CyclePacking() = default;
  /// Sorts; throws ValidationError when cycles share a vertex.
  explicit CyclePacking(std::vector<Cycle> cycles);

  const std::vector<Cycle>& cycles() const { return cycles_; }
  bool empty() const { return cycles_.empty(); }
  int size() const;
  bool covers(VertexId v) const;
  std::vector<VertexId> covered_vertices() const;  // sorted

  bool operator==(const CyclePacking&) const = default;
  auto operator<=>(const CyclePacking&) const = default;

  std::string to_string() const;

 private:
  std::vector<Cycle> cycles_;
};

/// An IKEP round: a partitioned compatibility digraph together with Gamma.
/// Instances are immutable after construction and safe to share across
/// threads.
class Instance {
 public:
  Instance(int vertex_count, std::vector<int> country_of, std::vector<Arc> arcs,
           GammaParams gamma);

  int vertex_count() const { return vertex_count_; }
  int country_count() const { return gamma_.n; }
  int country_of(VertexId v) const;
  const std::vector<int>& countries() const { return country_of_; }
  const GammaParams& gamma() const { return gamma_; }
  const std::vector<Arc>& arcs() const { return arcs_; }  // sorted, deduplicated

  bool has_arc(VertexId u, VertexId v) const;
  std::span<const VertexId> out_neighbors(VertexId u) const;  // sorted
  const std::vector<VertexId>& country_vertices(int country) const;
  bool arc_is_international(VertexId u, VertexId v) const;

  /// Same graph, different parameter set (misreports, sweeps).
  Instance with_gamma(GammaParams gamma) const;

  /// Non-fatal advisories: empty countries plus GammaParams::validate().
  std::vector<std::string> validate() const;

 private:
  int vertex_count_;
  std::vector<int> country_of_;
  std::vector<Arc> arcs_;
  GammaParams gamma_;
  std::vector<int> out_offsets_;  // CSR over arcs_
  std::vector<VertexId> out_targets_;
  std::vector<std::vector<VertexId>> by_country_;
};

/// Dynamic vertex bitset used to restrict operations to induced subgraphs
/// without renumbering vertices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe_size, bool all = false);

  void insert(VertexId v);
  void erase(VertexId v);
  bool contains(VertexId v) const;
  int universe_size() const { return size_; }

  static VertexSet all_of(const Instance& inst);
  static VertexSet of(const Instance& inst, const std::vector<VertexId>& vs);
  /// All vertices not covered by the packing.
  static VertexSet uncovered(const Instance& inst, const CyclePacking& p);

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

// --- Cycle-level operations ------------------------------------------------

/// Maximal same-country runs in cyclic order; the run containing the wrap
/// (last vertex -> first vertex) is merged and reported once.  A national
/// cycle yields a single segment covering every vertex.
std::vector<Segment> segment_decomposition(const Cycle& c, const Instance& inst);

bool cycle_is_international(const Cycle& c, const Instance& inst);

/// Why a cycle fails to be a Gamma-cycle; checks run in the order length,
/// segment size, segment count, and the first failure is reported.
enum class GammaViolation { None, Length, SegmentSize, SegmentCount };

struct GammaCheck {
  bool ok = true;
  GammaViolation violation = GammaViolation::None;
  std::string detail;
};

GammaCheck check_gamma_cycle(const Cycle& c, const Instance& inst);
bool is_gamma_cycle(const Cycle& c, const Instance& inst);

/// Number of transplants country receives from the cycle: arcs (u,v) with v
/// in that country, equivalently its vertices covered by the cycle.
int utility(const Cycle& c, int country, const Instance& inst);
int utility(const CyclePacking& p, int country, const Instance& inst);

/// True when every cycle is a Gamma-cycle and the packing is vertex-disjoint
/// (disjointness is structural, so this checks the Gamma part).
bool is_gamma_packing(const CyclePacking& p, const Instance& inst);

}  // namespace ikep
