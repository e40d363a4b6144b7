#pragma once

// Graph monoid, closed submonoids via their (H, S) data, orthogonality,
// simple and indecomposable projectives, corners and finite-dimensional
// endomorphism algebras.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lpa/digraph.hpp"
#include "lpa/ideals.hpp"
#include "lpa/quotients.hpp"

namespace lpa {

// ---------------------------------------------------------------------------
// Monoid

class MonoidElement {
 public:
  MonoidElement() = default;
  MonoidElement(std::initializer_list<std::pair<const std::string, std::uint64_t>> counts) {
    for (const auto& [v, n] : counts) add(v, n);
  }

  static MonoidElement of(const std::vector<std::string>& vertices) {
    MonoidElement m;
    for (const auto& v : vertices) m.add(v, 1);
    return m;
  }

  void add(const std::string& v, std::uint64_t n = 1) {
    if (n != 0) counts_[v] += n;
  }

  /// Removes n copies of v; false (and unchanged) if fewer are present.
  bool remove(const std::string& v, std::uint64_t n = 1) {
    auto it = counts_.find(v);
    if (it == counts_.end() || it->second < n) return false;
    it->second -= n;
    if (it->second == 0) counts_.erase(it);
    return true;
  }

  std::uint64_t count(const std::string& v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t size() const {
    std::uint64_t n = 0;
    for (const auto& [v, c] : counts_) n += c;
    return n;
  }

  bool contains(const MonoidElement& other) const {
    return std::all_of(other.counts_.begin(), other.counts_.end(),
                       [&](const auto& kv) { return count(kv.first) >= kv.second; });
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [v, n] : counts_) {
      s += (s.empty() ? "" : " + ") + (n == 1 ? "" : std::to_string(n) + "*") + "[" + v + "]";
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
  friend auto operator<=>(const MonoidElement&, const MonoidElement&) = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

struct MonoidRelation {
  std::string vertex;
  MonoidElement targets;
};

struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<MonoidRelation> relations;
};

inline MonoidPresentation monoid_presentation(const Digraph& g) {
  if (!g.is_row_finite()) fail(ErrorCode::NotRowFinite, "digraph has an omega arrow");
  MonoidPresentation out{g.vertices(), {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    MonoidRelation r{g.vertices()[v], {}};
    for (auto a : g.out_arrows(v)) r.targets.add(g.arrows()[a].target, g.arrows()[a].multiplicity.count);
    out.relations.push_back(std::move(r));
  }
  return out;
}

enum class Congruence { Congruent, NotWithinDepth };

inline constexpr std::size_t kMaxCongruenceStates = 200'000;

/// Bidirectional breadth-first search over single rewrites v <-> targets(v).
inline Congruence monoid_congruent(const Digraph& g, const MonoidElement& a, const MonoidElement& b,
                                   unsigned depth, std::size_t max_states = kMaxCongruenceStates) {
  const auto pres = monoid_presentation(g);
  for (const auto& side : {&a, &b}) {
    for (const auto& [v, n] : side->counts()) g.index_of(v);
  }
  if (a == b) return Congruence::Congruent;

  auto neighbours = [&](const MonoidElement& m) {
    std::vector<MonoidElement> out;
    for (const auto& r : pres.relations) {
      if (m.count(r.vertex) > 0) {
        auto next = m;
        next.remove(r.vertex);
        for (const auto& [w, n] : r.targets.counts()) next.add(w, n);
        out.push_back(std::move(next));
      }
      if (m.contains(r.targets)) {
        auto next = m;
        for (const auto& [w, n] : r.targets.counts()) next.remove(w, n);
        next.add(r.vertex);
        out.push_back(std::move(next));
      }
    }
    return out;
  };

  std::set<MonoidElement> seen[2] = {{a}, {b}};
  std::vector<MonoidElement> frontier[2] = {{a}, {b}};
  for (unsigned step = 0; step < depth; ++step) {
    const int side = (frontier[0].size() <= frontier[1].size()) ? 0 : 1;
    std::vector<MonoidElement> next;
    for (const auto& m : frontier[side]) {
      for (auto& n : neighbours(m)) {
        if (seen[1 - side].contains(n)) return Congruence::Congruent;
        if (seen[side].insert(n).second) next.push_back(std::move(n));
      }
      if (seen[0].size() + seen[1].size() > max_states) {
        fail(ErrorCode::ResourceLimit, "congruence search exceeded " + std::to_string(max_states) + " states");
      }
    }
    frontier[side] = std::move(next);
    if (frontier[0].empty() && frontier[1].empty()) break;
  }
  return Congruence::NotWithinDepth;
}

// ---------------------------------------------------------------------------
// Projective presentations

struct ArrowInstance {
  std::string arrow;
  std::uint64_t index = 0;

  friend bool operator==(const ArrowInstance&, const ArrowInstance&) = default;
  friend auto operator<=>(const ArrowInstance&, const ArrowInstance&) = default;
};

struct ProjectiveItem {
  std::string vertex;
  std::optional<std::set<ArrowInstance>> corner;  // absent for vL

  bool is_corner() const { return corner.has_value(); }
  friend bool operator==(const ProjectiveItem&, const ProjectiveItem&) = default;
};

struct ProjectivePresentation {
  std::vector<ProjectiveItem> items;

  static ProjectivePresentation vertices(const std::vector<std::string>& vs) {
    ProjectivePresentation p;
    for (const auto& v : vs) p.items.push_back({v, std::nullopt});
    return p;
  }
  friend bool operator==(const ProjectivePresentation&, const ProjectivePresentation&) = default;
};

inline void validate_projective(const Digraph& g, const ProjectivePresentation& p) {
  for (const auto& item : p.items) {
    const auto v = g.index_of(item.vertex);
    if (!item.is_corner()) continue;
    const auto& z = *item.corner;
    if (z.empty()) fail(ErrorCode::MalformedGenerators, "corner at '" + item.vertex + "' has an empty set");
    for (const auto& inst : z) {
      const auto& e = g.arrow(inst.arrow);
      if (e.source != item.vertex) {
        fail(ErrorCode::MalformedGenerators, "arrow '" + e.id + "' does not leave '" + item.vertex + "'");
      }
      if (!e.multiplicity.omega && inst.index >= e.multiplicity.count) {
        fail(ErrorCode::MalformedGenerators, "instance " + inst.arrow + "#" + std::to_string(inst.index) +
                                                 " is out of range");
      }
    }
    const auto d = g.out_degree(v);
    if (!d.infinite && d.finite <= z.size()) {
      fail(ErrorCode::MalformedGenerators, "corner at '" + item.vertex + "' removes every arrow");
    }
  }
}

namespace detail {

/// Some instance of class a lies outside z.
inline bool class_escapes(const ArrowClass& a, const std::set<ArrowInstance>& z) {
  if (a.multiplicity.omega) return true;
  std::uint64_t inside = 0;
  for (const auto& inst : z) inside += inst.arrow == a.id;
  return inside < a.multiplicity.count;
}

/// Every instance of class a lies in z.
inline bool class_covered(const ArrowClass& a, const std::set<ArrowInstance>& z) {
  return !class_escapes(a, z);
}

}  // namespace detail

/// A closed submonoid, recorded by the admissible pair it corresponds to.
struct ClosedSubmonoid {
  AdmissiblePair data;

  /// Generators: vL for v in H, and u^H L for u in S written as a corner at
  /// the instances into V \ H.
  ProjectivePresentation generators(const Digraph& g) const {
    auto p = ProjectivePresentation::vertices(g.ordered(data.H));
    const auto mask = g.mask_of(data.H);
    for (const auto& u : g.ordered(data.S)) {
      std::set<ArrowInstance> z;
      for (auto a : g.out_arrows(g.index_of(u))) {
        if (mask[g.target_index(a)]) continue;
        for (std::uint64_t i = 0; i < g.arrows()[a].multiplicity.count; ++i) z.insert({g.arrows()[a].id, i});
      }
      p.items.push_back({u, z});
    }
    return p;
  }

  friend bool operator==(const ClosedSubmonoid&, const ClosedSubmonoid&) = default;
};

inline ClosedSubmonoid galois_phi(const Digraph& g, const AdmissiblePair& pair) {
  require_admissible(g, pair);
  return {pair};
}

/// Recovers (H, S) from generator data of a closed submonoid.
inline AdmissiblePair galois_psi(const Digraph& g, const ProjectivePresentation& x) {
  validate_projective(g, x);
  VertexSet seed;
  for (const auto& item : x.items) {
    if (!item.is_corner()) seed.insert(item.vertex);
  }
  VertexSet h = hereditary_saturated_closure(g, seed);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& item : x.items) {
      if (!item.is_corner() || h.contains(item.vertex)) continue;
      const auto u = g.index_of(item.vertex);
      VertexSet grow = h;
      // instances outside Z are quotients of u_Z L, so their targets lie in H
      for (auto a : g.out_arrows(u)) {
        if (detail::class_escapes(g.arrows()[a], *item.corner)) grow.insert(g.arrows()[a].target);
      }
      grow = hereditary_saturated_closure(g, grow);
      const auto& outs = g.out_arrows(u);
      if (std::all_of(outs.begin(), outs.end(), [&](std::size_t a) { return grow.contains(g.arrows()[a].target); })) {
        grow.insert(item.vertex);
        grow = hereditary_saturated_closure(g, grow);
      }
      if (grow != h) {
        h = std::move(grow);
        changed = true;
      }
    }
  }
  AdmissiblePair out{h, {}};
  const auto b = breaking_vertices(g, h);
  for (const auto& item : x.items) {
    if (item.is_corner() && b.contains(item.vertex)) out.S.insert(item.vertex);
  }
  return out;
}

inline AdmissiblePair galois_psi(const Digraph& g, const ClosedSubmonoid& x) { return galois_psi(g, x.generators(g)); }

/// Hom(P, L/J) = 0, decided on generator data.
inline bool is_orthogonal(const Digraph& g, const ProjectivePresentation& p, const IdealPresentation& j) {
  validate_projective(g, p);
  require_valid(g, j);
  const auto& h = j.pair.H;
  for (const auto& item : p.items) {
    if (h.contains(item.vertex)) continue;
    if (!item.is_corner() || !j.pair.S.contains(item.vertex)) return false;
    for (auto a : g.out_arrows(g.index_of(item.vertex))) {
      const auto& e = g.arrows()[a];
      if (!h.contains(e.target) && !detail::class_covered(e, *item.corner)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Projectives and corners

struct SimpleClass {
  std::string representative;
  std::vector<std::string> members;
};

inline std::vector<SimpleClass> classify_simple_projectives(const Digraph& g) {
  std::vector<SimpleClass> out;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_sink(v)) continue;
    slot[v] = out.size();
    out.push_back({g.vertices()[v], {}});
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (auto sink = line_point_sink(g, v)) out[slot.at(*sink)].members.push_back(g.vertices()[v]);
  }
  return out;
}

struct FgipClass {
  GeometricCycle cycle;
  std::vector<std::string> support;
};

inline std::vector<FgipClass> classify_fgips(const Digraph& g, std::size_t limit = 10'000) {
  std::vector<FgipClass> out;
  for (const auto& info : enumerate_cycles(g, limit)) {
    if (info.hasExit) continue;
    const auto vs = cycle_vertices(g, info.cycle);
    out.push_back({info.cycle, g.ordered(predecessors(g, VertexSet(vs.begin(), vs.end())))});
  }
  return out;
}

enum class CornerKind { Field, LaurentRing, Other };

inline const char* to_string(CornerKind k) {
  switch (k) {
    case CornerKind::Field: return "Field";
    case CornerKind::LaurentRing: return "LaurentRing";
    case CornerKind::Other: return "Other";
  }
  return "Other";
}

/// v lies on an exit-free cycle iff following unique out-instances returns to v.
inline bool on_exit_free_cycle(const Digraph& g, std::size_t v) {
  std::size_t u = v;
  for (std::size_t steps = 0; steps < g.vertex_count(); ++steps) {
    if (!g.has_unique_out_instance(u)) return false;
    u = g.target_index(g.out_arrows(u).front());
    if (u == v) return true;
  }
  return false;
}

inline CornerKind corner_classify(const Digraph& g, const std::string& vertex) {
  const auto v = g.index_of(vertex);
  if (g.is_sink(v)) return CornerKind::Field;
  if (on_exit_free_cycle(g, v)) return CornerKind::LaurentRing;
  return CornerKind::Other;
}

// ---------------------------------------------------------------------------
// Matrix decompositions

struct MatrixDecomposition {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;  // (size, copies), sorted

  static MatrixDecomposition from_sizes(const std::vector<std::uint64_t>& sizes) {
    std::map<std::uint64_t, std::uint64_t> grouped;
    for (auto n : sizes) {
      if (n > 0) ++grouped[n];
    }
    return {{grouped.begin(), grouped.end()}};
  }

  std::uint64_t dimension() const {
    std::uint64_t d = 0;
    for (const auto& [n, c] : blocks) d = detail::checked_add(d, detail::checked_mul(c, detail::checked_mul(n, n)));
    return d;
  }

  /// "48 = 3 × M_4" style summary.
  std::string to_string() const {
    std::string s = std::to_string(dimension()) + " =";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      s += (i == 0 ? " " : " + ") + std::to_string(blocks[i].second) + " × M_" + std::to_string(blocks[i].first);
    }
    return blocks.empty() ? s + " 0" : s;
  }

  friend bool operator==(const MatrixDecomposition&, const MatrixDecomposition&) = default;
};

inline MatrixDecomposition acyclic_decomposition(const Digraph& g) {
  if (!g.is_row_finite()) fail(ErrorCode::NotRowFinite, "digraph has an omega arrow");
  if (!is_acyclic(g)) fail(ErrorCode::NotAcyclic, "digraph has a cycle");
  const auto paths = detail::paths_ending(g, std::vector<bool>(g.vertex_count(), false));
  std::vector<std::uint64_t> sizes;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) sizes.push_back(paths[v]);
  }
  return MatrixDecomposition::from_sizes(sizes);
}

struct EndVerdict {
  bool finite = false;
  MatrixDecomposition decomposition;
  std::string witness;
};

inline EndVerdict end_finite_dim(const Digraph& g, const ProjectivePresentation& p) {
  validate_projective(g, p);
  EndVerdict out;
  for (const auto& item : p.items) {
    if (item.is_corner()) {
      out.witness = "corner at " + item.vertex;
      return out;
    }
  }
  VertexSet starts;
  for (const auto& item : p.items) starts.insert(item.vertex);
  const auto reach = full_subgraph(g, successors(g, starts));
  for (const auto& e : reach.arrows()) {
    if (e.multiplicity.omega) {
      out.witness = "omega arrow " + e.id;
      return out;
    }
  }
  if (const auto c = find_cycle(reach)) {
    out.witness = "cycle " + c->to_string();
    return out;
  }
  // paths from each start, counted with multiplicity, weighted by repetitions
  std::map<std::string, std::uint64_t> weight;
  for (const auto& item : p.items) ++weight[item.vertex];
  std::vector<std::uint64_t> reaching(reach.vertex_count(), 0);
  std::vector<std::optional<std::vector<std::uint64_t>>> memo(reach.vertex_count());
  // number of paths from v to every sink
  std::function<const std::vector<std::uint64_t>&(std::size_t)> to_sinks = [&](std::size_t v)
      -> const std::vector<std::uint64_t>& {
    if (memo[v]) return *memo[v];
    std::vector<std::uint64_t> counts(reach.vertex_count(), 0);
    if (reach.is_sink(v)) counts[v] = 1;
    for (auto a : reach.out_arrows(v)) {
      const auto& below = to_sinks(reach.target_index(a));
      for (std::size_t s = 0; s < counts.size(); ++s) {
        counts[s] = detail::checked_add(counts[s], detail::checked_mul(reach.arrows()[a].multiplicity.count, below[s]));
      }
    }
    memo[v] = std::move(counts);
    return *memo[v];
  };
  for (const auto& [v, w] : weight) {
    const auto& c = to_sinks(reach.index_of(v));
    for (std::size_t s = 0; s < c.size(); ++s) reaching[s] = detail::checked_add(reaching[s], detail::checked_mul(w, c[s]));
  }
  out.finite = true;
  out.decomposition = MatrixDecomposition::from_sizes(reaching);
  return out;
}

}  // namespace lpa
