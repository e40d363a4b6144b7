#pragma once

// Finite digraphs whose arrow classes carry a multiplicity in {1, 2, ...} or
// omega, and the structural analyses the ideal and quotient constructions
// consume.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

using VertexSet = std::set<std::string>;

struct Multiplicity {
  std::uint64_t count = 1;
  bool omega = false;

  static Multiplicity finite(std::uint64_t k) { return {k, false}; }
  static Multiplicity infinite() { return {0, true}; }

  std::string to_string() const { return omega ? "omega" : std::to_string(count); }
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

struct ArrowClass {
  std::string id;
  std::string source;
  std::string target;
  Multiplicity multiplicity{};

  friend bool operator==(const ArrowClass&, const ArrowClass&) = default;
};

/// Out-degree counted with multiplicity; omega absorbs.
struct OutDegree {
  std::uint64_t finite = 0;
  bool infinite = false;
};

class Digraph {
 public:
  Digraph() = default;

  Digraph(std::string name, std::vector<std::string> vertices, std::vector<ArrowClass> arrows)
      : name_(std::move(name)), vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!vertex_index_.emplace(vertices_[i], i).second) {
        fail(ErrorCode::DuplicateId, "duplicate vertex '" + vertices_[i] + "'");
      }
    }
    out_.resize(vertices_.size());
    in_.resize(vertices_.size());
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      const auto& arrow = arrows_[a];
      if (!arrow_index_.emplace(arrow.id, a).second) {
        fail(ErrorCode::DuplicateId, "duplicate arrow '" + arrow.id + "'");
      }
      if (!arrow.multiplicity.omega && arrow.multiplicity.count == 0) {
        fail(ErrorCode::DuplicateId, "arrow '" + arrow.id + "' has multiplicity 0");
      }
      out_[index_of(arrow.source)].push_back(a);
      in_[index_of(arrow.target)].push_back(a);
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<ArrowClass>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  bool has_vertex(const std::string& v) const { return vertex_index_.contains(v); }
  bool has_arrow(const std::string& e) const { return arrow_index_.contains(e); }

  std::size_t index_of(const std::string& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end()) fail(ErrorCode::UnknownVertex, "unknown vertex '" + v + "'");
    return it->second;
  }
  std::size_t arrow_index_of(const std::string& e) const {
    auto it = arrow_index_.find(e);
    if (it == arrow_index_.end()) fail(ErrorCode::UnknownArrow, "unknown arrow '" + e + "'");
    return it->second;
  }
  const ArrowClass& arrow(const std::string& e) const { return arrows_[arrow_index_of(e)]; }

  /// Arrow indices leaving / entering vertex index v, in declaration order.
  const std::vector<std::size_t>& out_arrows(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_arrows(std::size_t v) const { return in_[v]; }

  std::size_t source_index(std::size_t a) const { return vertex_index_.at(arrows_[a].source); }
  std::size_t target_index(std::size_t a) const { return vertex_index_.at(arrows_[a].target); }

  OutDegree out_degree(std::size_t v) const {
    OutDegree d;
    for (auto a : out_[v]) {
      const auto& m = arrows_[a].multiplicity;
      if (m.omega) d.infinite = true;
      else d.finite += m.count;
    }
    return d;
  }

  bool is_sink(std::size_t v) const { return out_[v].empty(); }
  bool is_infinite_emitter(std::size_t v) const { return out_degree(v).infinite; }
  /// 0 < out-degree < infinity
  bool is_regular(std::size_t v) const {
    const auto d = out_degree(v);
    return !d.infinite && d.finite > 0;
  }
  /// Exactly one arrow instance leaves v.
  bool has_unique_out_instance(std::size_t v) const {
    const auto d = out_degree(v);
    return !d.infinite && d.finite == 1;
  }

  bool is_row_finite() const {
    return std::none_of(arrows_.begin(), arrows_.end(),
                        [](const ArrowClass& a) { return a.multiplicity.omega; });
  }

  /// Vertex ids of the set, in declaration order.
  std::vector<std::string> ordered(const VertexSet& set) const {
    std::vector<std::size_t> idx;
    for (const auto& v : set) idx.push_back(index_of(v));
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(vertices_[i]);
    return out;
  }

  std::vector<bool> mask_of(const VertexSet& set) const {
    std::vector<bool> m(vertices_.size(), false);
    for (const auto& v : set) m[index_of(v)] = true;
    return m;
  }

  VertexSet set_of(const std::vector<bool>& mask) const {
    VertexSet s;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) s.insert(vertices_[i]);
    }
    return s;
  }

  /// Same vertices and arrows; names may differ.
  bool same_structure(const Digraph& other) const {
    return vertices_ == other.vertices_ && arrows_ == other.arrows_;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.name_ == b.name_ && a.same_structure(b);
  }

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<ArrowClass> arrows_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> arrow_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Orders vertex sets by size, then by declaration indices.
inline std::vector<VertexSet> sorted_sets(const Digraph& g, std::vector<VertexSet> sets) {
  auto key = [&](const VertexSet& s) {
    std::vector<std::size_t> idx;
    for (const auto& v : s) idx.push_back(g.index_of(v));
    std::sort(idx.begin(), idx.end());
    return std::make_pair(idx.size(), idx);
  };
  std::sort(sets.begin(), sets.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return sets;
}

// ---------------------------------------------------------------------------
// Reachability

inline VertexSet successors(const Digraph& g, const VertexSet& from) {
  std::vector<bool> seen = g.mask_of(from);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) stack.push_back(i);
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto a : g.out_arrows(v)) {
      const auto w = g.target_index(a);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return g.set_of(seen);
}

inline VertexSet predecessors(const Digraph& g, const VertexSet& from) {
  std::vector<bool> seen = g.mask_of(from);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) stack.push_back(i);
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto a : g.in_arrows(v)) {
      const auto w = g.source_index(a);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return g.set_of(seen);
}

/// Full subgraph on W, multiplicities intact, declaration order kept.
inline Digraph full_subgraph(const Digraph& g, const VertexSet& keep) {
  const auto mask = g.mask_of(keep);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (mask[i]) vs.push_back(g.vertices()[i]);
  }
  std::vector<ArrowClass> as;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    if (mask[g.source_index(a)] && mask[g.target_index(a)]) as.push_back(g.arrows()[a]);
  }
  return Digraph(g.name(), std::move(vs), std::move(as));
}

// ---------------------------------------------------------------------------
// Vertex classification

struct VertexReport {
  std::string id;
  bool sink = false;
  bool source = false;
  bool branchVertex = false;
  bool infiniteEmitter = false;
  bool regular = false;
  bool linePoint = false;
  bool leak = false;  // never true for a finite digraph
};

/// Terminal sink of the unique forward path from v if v is a line point.
inline std::optional<std::size_t> line_point_sink(const Digraph& g, std::size_t v) {
  std::vector<bool> visited(g.vertex_count(), false);
  std::size_t u = v;
  while (true) {
    if (g.is_sink(u)) return u;
    if (!g.has_unique_out_instance(u) || visited[u]) return std::nullopt;
    visited[u] = true;
    u = g.target_index(g.out_arrows(u).front());
  }
}

/// A leak needs an infinite non-repeating forward path, which a finite
/// digraph cannot carry.
inline bool is_leak(const Digraph&, std::size_t) { return false; }

inline std::vector<VertexReport> classify_vertices(const Digraph& g) {
  std::vector<VertexReport> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto d = g.out_degree(v);
    VertexReport r;
    r.id = g.vertices()[v];
    r.sink = g.is_sink(v);
    r.source = g.in_arrows(v).empty();
    r.branchVertex = d.infinite || d.finite >= 2;
    r.infiniteEmitter = d.infinite;
    r.regular = !d.infinite && d.finite > 0;
    r.linePoint = line_point_sink(g, v).has_value();
    r.leak = is_leak(g, v);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycles

/// A simple cycle up to rotation, stored starting at its lexicographically
/// smallest arrow id.
struct GeometricCycle {
  std::vector<std::string> arrows;
  std::string base;

  /// Validates that the arrows form a simple cycle of g and rotates them into
  /// canonical position.
  static GeometricCycle canonical(const Digraph& g, std::vector<std::string> arrows) {
    if (arrows.empty()) fail(ErrorCode::NotACycle, "empty cycle");
    const std::size_t n = arrows.size();
    std::set<std::string> sources;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = g.arrow(arrows[i]);
      const auto& next = g.arrow(arrows[(i + 1) % n]);
      if (e.target != next.source) {
        fail(ErrorCode::NotACycle, "arrows '" + e.id + "' and '" + next.id + "' are not consecutive");
      }
      if (!sources.insert(e.source).second) {
        fail(ErrorCode::NotACycle, "vertex '" + e.source + "' repeats on the cycle");
      }
    }
    const auto first = std::min_element(arrows.begin(), arrows.end());
    std::rotate(arrows.begin(), first, arrows.end());
    GeometricCycle c;
    c.base = g.arrow(arrows.front()).source;
    c.arrows = std::move(arrows);
    return c;
  }

  std::size_t length() const { return arrows.size(); }

  std::string to_string() const {
    std::string s;
    for (const auto& a : arrows) s += (s.empty() ? "" : " ") + a;
    return s;
  }

  friend bool operator==(const GeometricCycle& a, const GeometricCycle& b) { return a.arrows == b.arrows; }
  friend auto operator<=>(const GeometricCycle& a, const GeometricCycle& b) { return a.arrows <=> b.arrows; }
};

/// Vertices along the cycle, starting at the base.
inline std::vector<std::string> cycle_vertices(const Digraph& g, const GeometricCycle& c) {
  std::vector<std::string> vs;
  for (const auto& e : c.arrows) vs.push_back(g.arrow(e).source);
  return vs;
}

/// A cycle has an exit iff some vertex on it emits an arrow instance other than
/// the cycle's own one.
inline bool cycle_has_exit(const Digraph& g, const GeometricCycle& c) {
  for (const auto& e : c.arrows) {
    if (!g.has_unique_out_instance(g.index_of(g.arrow(e).source))) return true;
  }
  return false;
}

struct CycleInfo {
  GeometricCycle cycle;
  bool hasExit = false;
  bool exclusive = false;
  bool multiplicityOne = false;
};

namespace detail {

/// Johnson's elementary-circuit search over arrow classes. Parallel classes
/// yield distinct circuits because the recursion runs over arrows.
class CircuitFinder {
 public:
  CircuitFinder(const Digraph& g, std::size_t limit) : g_(g), limit_(limit) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = g_.vertex_count();
    for (std::size_t s = 0; s < n; ++s) {
      component_ = strong_component(s);
      bool cyclic = std::count(component_.begin(), component_.end(), true) > 1;
      for (auto a : g_.out_arrows(s)) cyclic = cyclic || g_.target_index(a) == s;
      if (!cyclic) continue;
      blocked_.assign(n, false);
      blocker_.assign(n, {});
      start_ = s;
      circuit(s);
    }
    return std::move(found_);
  }

 private:
  // Strongly connected component of s in the subgraph induced by {s, ..., n-1}.
  std::vector<bool> strong_component(std::size_t s) const {
    const std::size_t n = g_.vertex_count();
    std::vector<bool> fwd(n, false), bwd(n, false);
    auto sweep = [&](std::vector<bool>& seen, bool forward) {
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        const auto& arrows = forward ? g_.out_arrows(v) : g_.in_arrows(v);
        for (auto a : arrows) {
          auto w = forward ? g_.target_index(a) : g_.source_index(a);
          if (w >= s && !seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
    };
    sweep(fwd, true);
    sweep(bwd, false);
    std::vector<bool> comp(n, false);
    for (std::size_t i = 0; i < n; ++i) comp[i] = fwd[i] && bwd[i];
    return comp;
  }

  void unblock(std::size_t u) {
    blocked_[u] = false;
    auto pending = std::move(blocker_[u]);
    blocker_[u].clear();
    for (auto w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(std::size_t v) {
    bool closed = false;
    blocked_[v] = true;
    for (auto a : g_.out_arrows(v)) {
      const auto w = g_.target_index(a);
      if (!component_[w]) continue;
      if (w == start_) {
        path_.push_back(a);
        found_.push_back(path_);
        path_.pop_back();
        if (found_.size() > limit_) {
          fail(ErrorCode::ResourceLimit, "more than " + std::to_string(limit_) + " cycles");
        }
        closed = true;
      } else if (!blocked_[w]) {
        path_.push_back(a);
        if (circuit(w)) closed = true;
        path_.pop_back();
      }
    }
    if (closed) {
      unblock(v);
    } else {
      for (auto a : g_.out_arrows(v)) {
        const auto w = g_.target_index(a);
        if (component_[w]) blocker_[w].insert(v);
      }
    }
    return closed;
  }

  const Digraph& g_;
  std::size_t limit_;
  std::size_t start_ = 0;
  std::vector<bool> component_;
  std::vector<bool> blocked_;
  std::vector<std::set<std::size_t>> blocker_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace detail

/// All simple cycles in canonical rotation, sorted by arrow-id sequence.
inline std::vector<CycleInfo> enumerate_cycles(const Digraph& g, std::size_t limit = 10'000) {
  if (limit < 1) fail(ErrorCode::ResourceLimit, "cycle limit must be positive");
  std::set<GeometricCycle> cycles;
  for (const auto& path : detail::CircuitFinder(g, limit).run()) {
    std::vector<std::string> ids;
    for (auto a : path) ids.push_back(g.arrows()[a].id);
    cycles.insert(GeometricCycle::canonical(g, std::move(ids)));
  }
  std::vector<CycleInfo> out;
  std::vector<std::size_t> vertex_use(g.vertex_count(), 0);
  for (const auto& c : cycles) {
    for (const auto& v : cycle_vertices(g, c)) ++vertex_use[g.index_of(v)];
  }
  for (const auto& c : cycles) {
    CycleInfo info;
    info.cycle = c;
    info.hasExit = cycle_has_exit(g, c);
    info.exclusive = true;
    for (const auto& v : cycle_vertices(g, c)) info.exclusive = info.exclusive && vertex_use[g.index_of(v)] == 1;
    info.multiplicityOne = std::all_of(c.arrows.begin(), c.arrows.end(), [&](const std::string& e) {
      return g.arrow(e).multiplicity == Multiplicity::finite(1);
    });
    out.push_back(std::move(info));
  }
  return out;
}

inline bool is_acyclic(const Digraph& g) {
  // Kahn's algorithm on the underlying simple graph.
  std::vector<std::size_t> indeg(g.vertex_count(), 0);
  for (std::size_t a = 0; a < g.arrow_count(); ++a) ++indeg[g.target_index(a)];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++removed;
    for (auto a : g.out_arrows(v)) {
      if (--indeg[g.target_index(a)] == 0) ready.push_back(g.target_index(a));
    }
  }
  return removed == g.vertex_count();
}

/// Some cycle of g, found by depth-first search, or nothing if g is acyclic.
inline std::optional<GeometricCycle> find_cycle(const Digraph& g) {
  enum class Mark { New, Open, Done };
  std::vector<Mark> mark(g.vertex_count(), Mark::New);
  std::vector<std::size_t> stack;  // arrows on the current path
  std::optional<GeometricCycle> found;
  auto visit = [&](auto&& self, std::size_t v) -> bool {
    mark[v] = Mark::Open;
    for (auto a : g.out_arrows(v)) {
      const auto t = g.target_index(a);
      stack.push_back(a);
      if (mark[t] == Mark::Open) {
        std::vector<std::string> arrows;
        auto it = stack.end();
        do {
          --it;
          arrows.insert(arrows.begin(), g.arrows()[*it].id);
        } while (g.source_index(*it) != t);
        found = GeometricCycle::canonical(g, std::move(arrows));
        return true;
      }
      if (mark[t] == Mark::New && self(self, t)) return true;
      stack.pop_back();
    }
    mark[v] = Mark::Done;
    return false;
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (mark[v] == Mark::New && visit(visit, v)) break;
  }
  return found;
}

// ---------------------------------------------------------------------------
// Hereditary and saturated sets

inline bool is_hereditary(const Digraph& g, const VertexSet& h) {
  const auto mask = g.mask_of(h);
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    if (mask[g.source_index(a)] && !mask[g.target_index(a)]) return false;
  }
  return true;
}

inline bool is_saturated(const Digraph& g, const VertexSet& h) {
  const auto mask = g.mask_of(h);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (mask[v] || !g.is_regular(v)) continue;
    const auto& outs = g.out_arrows(v);
    if (std::all_of(outs.begin(), outs.end(), [&](std::size_t a) { return mask[g.target_index(a)]; })) {
      return false;
    }
  }
  return true;
}

inline VertexSet hereditary_saturated_closure(const Digraph& g, const VertexSet& x) {
  std::vector<bool> in = g.mask_of(x);
  bool changed = true;
  while (changed) {
    changed = false;
    // hereditary step
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < in.size(); ++v) {
      if (in[v]) stack.push_back(v);
    }
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto a : g.out_arrows(v)) {
        auto w = g.target_index(a);
        if (!in[w]) {
          in[w] = true;
          stack.push_back(w);
          changed = true;
        }
      }
    }
    // saturation step
    for (std::size_t v = 0; v < in.size(); ++v) {
      if (in[v] || !g.is_regular(v)) continue;
      const auto& outs = g.out_arrows(v);
      if (std::all_of(outs.begin(), outs.end(), [&](std::size_t a) { return in[g.target_index(a)]; })) {
        in[v] = true;
        changed = true;
      }
    }
  }
  return g.set_of(in);
}

inline constexpr std::size_t kMaxSubsetVertices = 16;

/// All hereditary saturated subsets by exhaustive subset testing.
inline std::vector<VertexSet> enumerate_hereditary_saturated(const Digraph& g, std::size_t limit = 10'000,
                                                             std::size_t max_vertices = kMaxSubsetVertices) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices || n >= 63) {
    fail(ErrorCode::ResourceLimit, std::to_string(n) + " vertices exceed the subset bound " +
                                       std::to_string(max_vertices));
  }
  std::vector<std::uint64_t> targets(n, 0);
  std::vector<bool> regular(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    regular[v] = g.is_regular(v);
    for (auto a : g.out_arrows(v)) targets[v] |= std::uint64_t{1} << g.target_index(a);
  }
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const bool in = mask >> v & 1;
      const bool covered = (targets[v] & ~mask) == 0;
      if (in && !covered) ok = false;                 // hereditary
      if (!in && regular[v] && covered) ok = false;   // saturated
    }
    if (!ok) continue;
    std::vector<bool> m(n);
    for (std::size_t v = 0; v < n; ++v) m[v] = mask >> v & 1;
    out.push_back(g.set_of(m));
    if (out.size() > limit) fail(ErrorCode::ResourceLimit, "more than " + std::to_string(limit) + " sets");
  }
  return sorted_sets(g, std::move(out));
}

/// B_H: infinite emitters with finitely many, but at least one, arrow
/// instances into V \ H.
inline VertexSet breaking_vertices(const Digraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h)) fail(ErrorCode::NotHereditary, "set is not hereditary");
  const auto mask = g.mask_of(h);
  VertexSet out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_infinite_emitter(v)) continue;
    bool positive = false, infinite = false;
    for (auto a : g.out_arrows(v)) {
      if (mask[g.target_index(a)]) continue;
      positive = true;
      infinite = infinite || g.arrows()[a].multiplicity.omega;
    }
    if (positive && !infinite) out.insert(g.vertices()[v]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Admissible pairs

struct AdmissiblePair {
  VertexSet H;
  VertexSet S;

  friend bool operator==(const AdmissiblePair&, const AdmissiblePair&) = default;
  friend auto operator<=>(const AdmissiblePair&, const AdmissiblePair&) = default;
};

inline bool is_admissible(const Digraph& g, const AdmissiblePair& pair) {
  for (const auto& v : pair.H) g.index_of(v);
  for (const auto& v : pair.S) g.index_of(v);
  if (!is_hereditary(g, pair.H) || !is_saturated(g, pair.H)) return false;
  const auto b = breaking_vertices(g, pair.H);
  return std::includes(b.begin(), b.end(), pair.S.begin(), pair.S.end());
}

inline void require_admissible(const Digraph& g, const AdmissiblePair& pair) {
  if (!is_admissible(g, pair)) fail(ErrorCode::NotAdmissible, "pair (H, S) is not admissible");
}

// ---------------------------------------------------------------------------
// Morphisms

struct DigraphMorphism {
  std::string name;
  std::map<std::string, std::string> vertexMap;
  std::map<std::string, std::string> arrowMap;

  friend bool operator==(const DigraphMorphism&, const DigraphMorphism&) = default;
};

struct MorphismVerdict {
  bool valid = true;
  bool fibersFinite = true;
  std::vector<std::string> violations;
};

inline MorphismVerdict check_admissible_morphism(const Digraph& src, const Digraph& dst,
                                                 const DigraphMorphism& f) {
  const auto malformed = [](const std::string& m) { fail(ErrorCode::MalformedMorphism, m); };
  for (const auto& v : src.vertices()) {
    auto it = f.vertexMap.find(v);
    if (it == f.vertexMap.end()) malformed("vertex '" + v + "' is not mapped");
    if (!dst.has_vertex(it->second)) malformed("vertex image '" + it->second + "' is unknown");
  }
  for (const auto& e : src.arrows()) {
    auto it = f.arrowMap.find(e.id);
    if (it == f.arrowMap.end()) malformed("arrow '" + e.id + "' is not mapped");
    if (!dst.has_arrow(it->second)) malformed("arrow image '" + it->second + "' is unknown");
    const auto& img = dst.arrow(it->second);
    if (f.vertexMap.at(e.source) != img.source || f.vertexMap.at(e.target) != img.target) {
      malformed("arrow '" + e.id + "' does not commute with source/target");
    }
  }
  if (f.vertexMap.size() != src.vertex_count() || f.arrowMap.size() != src.arrow_count()) {
    malformed("map mentions ids outside the source digraph");
  }
  for (const auto* g : {&src, &dst}) {
    for (const auto& e : g->arrows()) {
      if (!(e.multiplicity == Multiplicity::finite(1))) {
        malformed("arrow '" + e.id + "' of '" + g->name() + "' has multiplicity other than 1");
      }
    }
  }

  MorphismVerdict verdict;
  // (ii) t restricts to a bijection from the fiber of e onto the fiber of te.
  std::map<std::string, std::vector<std::string>> vertex_fiber, arrow_fiber;
  for (const auto& [v, w] : f.vertexMap) vertex_fiber[w].push_back(v);
  for (const auto& [e, d] : f.arrowMap) arrow_fiber[d].push_back(e);
  for (const auto& e : dst.arrows()) {
    const auto& over_e = arrow_fiber[e.id];
    const auto& over_te = vertex_fiber[e.target];
    std::vector<std::string> images;
    for (const auto& x : over_e) images.push_back(src.arrow(x).target);
    std::sort(images.begin(), images.end());
    std::vector<std::string> expected = over_te;
    std::sort(expected.begin(), expected.end());
    if (images != expected) {
      verdict.violations.push_back("(ii) arrow '" + e.id + "': target map is not a bijection onto the fiber of '" +
                                   e.target + "'");
    }
  }
  // (iii) sinks go to sinks or infinite emitters.
  for (std::size_t v = 0; v < src.vertex_count(); ++v) {
    if (!src.is_sink(v)) continue;
    const auto& w = f.vertexMap.at(src.vertices()[v]);
    const auto wi = dst.index_of(w);
    if (!dst.is_sink(wi) && !dst.is_infinite_emitter(wi)) {
      verdict.violations.push_back("(iii) sink '" + src.vertices()[v] + "' maps to '" + w +
                                   "', neither a sink nor an infinite emitter");
    }
  }
  verdict.valid = verdict.violations.empty();
  return verdict;
}

}  // namespace lpa
