#include "ikep/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ikep {

GammaParams::GammaParams(int n_, Bound icl_, std::vector<Bound> ncl_, std::vector<Bound> iss_,
                         std::vector<Bound> isn_)
    : n(n_), icl(icl_), ncl(std::move(ncl_)), iss(std::move(iss_)), isn(std::move(isn_)) {
  if (n < 1) throw ValidationError("GammaParams: country count must be >= 1");
  if (static_cast<int>(ncl.size()) != n || static_cast<int>(iss.size()) != n ||
      static_cast<int>(isn.size()) != n) {
    throw ValidationError("GammaParams: ncl/iss/isn must have one entry per country");
  }
  if (icl == Bound::finite(1)) throw ValidationError("GammaParams: icl = 1 is not allowed");
  for (const Bound& b : ncl) {
    if (b == Bound::finite(1)) throw ValidationError("GammaParams: ncl_i = 1 is not allowed");
  }
}

std::vector<std::string> GammaParams::validate() const {
  std::vector<std::string> warnings;
  for (int i = 0; i < n; ++i) {
    if (iss[i] < Bound::finite(1)) {
      warnings.push_back("country " + std::to_string(i) +
                         " has iss = 0 (does not participate internationally)");
    }
    if (isn[i] < Bound::finite(1)) {
      warnings.push_back("country " + std::to_string(i) +
                         " has isn = 0 (does not participate internationally)");
    }
  }
  return warnings;
}

GammaParams GammaParams::with_icl(Bound v) const {
  GammaParams g = *this;
  g.icl = v;
  return GammaParams(g.n, g.icl, g.ncl, g.iss, g.isn);
}

GammaParams GammaParams::with_ncl(int country, Bound v) const {
  GammaParams g = *this;
  g.ncl.at(country) = v;
  return GammaParams(g.n, g.icl, g.ncl, g.iss, g.isn);
}

GammaParams GammaParams::with_iss(int country, Bound v) const {
  GammaParams g = *this;
  g.iss.at(country) = v;
  return GammaParams(g.n, g.icl, g.ncl, g.iss, g.isn);
}

GammaParams GammaParams::with_isn(int country, Bound v) const {
  GammaParams g = *this;
  g.isn.at(country) = v;
  return GammaParams(g.n, g.icl, g.ncl, g.iss, g.isn);
}

Cycle::Cycle(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw ValidationError("Cycle: needs at least 2 vertices");
  auto min_it = std::min_element(vertices_.begin(), vertices_.end());
  std::rotate(vertices_.begin(), min_it, vertices_.end());
  std::vector<VertexId> sorted = vertices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("Cycle: duplicate vertex");
  }
  if (vertices_.front() < 0) throw ValidationError("Cycle: negative vertex id");
}

bool Cycle::contains(VertexId v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

std::string Cycle::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out << ",";
    out << vertices_[i];
  }
  out << ">";
  return out.str();
}

Cycle canonicalize_cycle(std::vector<VertexId> seq) { return Cycle(std::move(seq)); }

CyclePacking::CyclePacking(std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
  std::sort(cycles_.begin(), cycles_.end());
  std::set<VertexId> seen;
  for (const Cycle& c : cycles_) {
    for (VertexId v : c.vertices()) {
      if (!seen.insert(v).second) {
        throw ValidationError("CyclePacking: cycles share vertex " + std::to_string(v));
      }
    }
  }
}

int CyclePacking::size() const {
  int total = 0;
  for (const Cycle& c : cycles_) total += c.length();
  return total;
}

bool CyclePacking::covers(VertexId v) const {
  for (const Cycle& c : cycles_) {
    if (c.contains(v)) return true;
  }
  return false;
}

std::vector<VertexId> CyclePacking::covered_vertices() const {
  std::vector<VertexId> out;
  for (const Cycle& c : cycles_) out.insert(out.end(), c.vertices().begin(), c.vertices().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string CyclePacking::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < cycles_.size(); ++i) {
    if (i) out << ", ";
    out << cycles_[i].to_string();
  }
  out << "}";
  return out.str();
}

Instance::Instance(int vertex_count, std::vector<int> country_of, std::vector<Arc> arcs,
                   GammaParams gamma)
    : vertex_count_(vertex_count),
      country_of_(std::move(country_of)),
      arcs_(std::move(arcs)),
      gamma_(std::move(gamma)) {
  if (vertex_count_ < 0) throw ValidationError("Instance: negative vertex count");
  if (static_cast<int>(country_of_.size()) != vertex_count_) {
    throw ValidationError("Instance: country_of must list every vertex");
  }
  for (int c : country_of_) {
    if (c < 0 || c >= gamma_.n) throw ValidationError("Instance: country index out of range");
  }
  std::sort(arcs_.begin(), arcs_.end());
  if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end()) {
    throw ValidationError("Instance: duplicate arc");
  }
  for (const Arc& a : arcs_) {
    if (a.first == a.second) throw ValidationError("Instance: self-loop");
    if (a.first < 0 || a.first >= vertex_count_ || a.second < 0 || a.second >= vertex_count_) {
      throw ValidationError("Instance: arc endpoint out of range");
    }
  }
  out_offsets_.assign(vertex_count_ + 1, 0);
  for (const Arc& a : arcs_) out_offsets_[a.first + 1]++;
  for (int v = 0; v < vertex_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
  out_targets_.resize(arcs_.size());
  {
    std::vector<int> fill(out_offsets_.begin(), out_offsets_.end() - 1);
    for (const Arc& a : arcs_) out_targets_[fill[a.first]++] = a.second;
  }
  by_country_.assign(gamma_.n, {});
  for (int v = 0; v < vertex_count_; ++v) by_country_[country_of_[v]].push_back(v);
}

int Instance::country_of(VertexId v) const {
  if (v < 0 || v >= vertex_count_) throw ValidationError("vertex id out of range");
  return country_of_[v];
}

bool Instance::has_arc(VertexId u, VertexId v) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{u, v});
}

std::span<const VertexId> Instance::out_neighbors(VertexId u) const {
  return {out_targets_.data() + out_offsets_[u],
          out_targets_.data() + out_offsets_[u + 1]};
}

const std::vector<VertexId>& Instance::country_vertices(int country) const {
  if (country < 0 || country >= gamma_.n) throw ValidationError("country index out of range");
  return by_country_[country];
}

bool Instance::arc_is_international(VertexId u, VertexId v) const {
  return country_of(u) != country_of(v);
}

Instance Instance::with_gamma(GammaParams gamma) const {
  if (gamma.n != gamma_.n) throw ValidationError("with_gamma: country count must not change");
  return Instance(vertex_count_, country_of_, arcs_, std::move(gamma));
}

std::vector<std::string> Instance::validate() const {
  std::vector<std::string> warnings = gamma_.validate();
  for (int i = 0; i < gamma_.n; ++i) {
    if (by_country_[i].empty()) {
      warnings.push_back("country " + std::to_string(i) + " has no vertices");
    }
  }
  return warnings;
}

VertexSet::VertexSet(int universe_size, bool all)
    : size_(universe_size), words_((universe_size + 63) / 64, all ? ~0ull : 0ull) {
  if (all && universe_size % 64 != 0 && !words_.empty()) {
    words_.back() = (1ull << (universe_size % 64)) - 1;
  }
}

void VertexSet::insert(VertexId v) { words_[v / 64] |= 1ull << (v % 64); }
void VertexSet::erase(VertexId v) { words_[v / 64] &= ~(1ull << (v % 64)); }
bool VertexSet::contains(VertexId v) const { return (words_[v / 64] >> (v % 64)) & 1ull; }

VertexSet VertexSet::all_of(const Instance& inst) { return VertexSet(inst.vertex_count(), true); }

VertexSet VertexSet::of(const Instance& inst, const std::vector<VertexId>& vs) {
  VertexSet s(inst.vertex_count());
  for (VertexId v : vs) s.insert(v);
  return s;
}

VertexSet VertexSet::uncovered(const Instance& inst, const CyclePacking& p) {
  VertexSet s = all_of(inst);
  for (const Cycle& c : p.cycles()) {
    for (VertexId v : c.vertices()) s.erase(v);
  }
  return s;
}

std::vector<Segment> segment_decomposition(const Cycle& c, const Instance& inst) {
  std::vector<Segment> runs;
  for (VertexId v : c.vertices()) {
    int country = inst.country_of(v);
    if (!runs.empty() && runs.back().country == country) {
      runs.back().size++;
    } else {
      runs.push_back({country, 1});
    }
  }
  // The cyclic wrap merges the last run into the first when they share a
  // country; a national cycle collapses to a single segment this way.
  if (runs.size() > 1 && runs.front().country == runs.back().country) {
    runs.front().size += runs.back().size;
    runs.pop_back();
  }
  return runs;
}

bool cycle_is_international(const Cycle& c, const Instance& inst) {
  const auto& vs = c.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (inst.country_of(vs[i]) != inst.country_of(vs[(i + 1) % vs.size()])) return true;
  }
  return false;
}

GammaCheck check_gamma_cycle(const Cycle& c, const Instance& inst) {
  const GammaParams& g = inst.gamma();
  for (VertexId v : c.vertices()) inst.country_of(v);  // range check
  if (!cycle_is_international(c, inst)) {
    int country = inst.country_of(c.vertices().front());
    if (!g.ncl[country].allows(c.length())) {
      return {false, GammaViolation::Length,
              "national cycle of length " + std::to_string(c.length()) + " exceeds ncl_" +
                  std::to_string(country) + " = " + g.ncl[country].to_string()};
    }
    return {};
  }
  if (!g.icl.allows(c.length())) {
    return {false, GammaViolation::Length,
            "international cycle of length " + std::to_string(c.length()) + " exceeds icl = " +
                g.icl.to_string()};
  }
  std::vector<Segment> segs = segment_decomposition(c, inst);
  for (const Segment& s : segs) {
    if (!g.iss[s.country].allows(s.size)) {
      return {false, GammaViolation::SegmentSize,
              "segment of size " + std::to_string(s.size) + " exceeds iss_" +
                  std::to_string(s.country) + " = " + g.iss[s.country].to_string()};
    }
  }
  std::vector<int> counts(g.n, 0);
  for (const Segment& s : segs) counts[s.country]++;
  for (int i = 0; i < g.n; ++i) {
    if (counts[i] > 0 && !g.isn[i].allows(counts[i])) {
      return {false, GammaViolation::SegmentCount,
              std::to_string(counts[i]) + " segments exceed isn_" + std::to_string(i) + " = " +
                  g.isn[i].to_string()};
    }
  }
  return {};
}

bool is_gamma_cycle(const Cycle& c, const Instance& inst) {
  return check_gamma_cycle(c, inst).ok;
}

int utility(const Cycle& c, int country, const Instance& inst) {
  if (country < 0 || country >= inst.country_count()) {
    throw ValidationError("utility: country index out of range");
  }
  int count = 0;
  for (VertexId v : c.vertices()) {
    if (inst.country_of(v) == country) count++;
  }
  return count;
}

int utility(const CyclePacking& p, int country, const Instance& inst) {
  int total = 0;
  for (const Cycle& c : p.cycles()) total += utility(c, country, inst);
  return total;
}

bool is_gamma_packing(const CyclePacking& p, const Instance& inst) {
  for (const Cycle& c : p.cycles()) {
    if (!is_gamma_cycle(c, inst)) return false;
    const auto& vs = c.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!inst.has_arc(vs[i], vs[(i + 1) % vs.size()])) return false;
    }
  }
  return true;
}

}  // namespace ikep
