#pragma once

// Digraph rewrites that do not need ideal data: the graded quotient by an
// admissible pair and the cycle-to-loop rewrite.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/digraph.hpp"

namespace lpa {

/// Where an output vertex or arrow came from. `origin` is an id of the input
/// digraph of the first step; `rule` lists the steps applied, joined by '>'.
struct Provenance {
  std::string id;
  bool vertex = true;
  std::string origin;
  std::string rule;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct QuotientResult {
  Digraph digraph;
  std::vector<Provenance> provenance;

  const Provenance& origin_of(const std::string& id, bool vertex) const {
    for (const auto& p : provenance) {
      if (p.id == id && p.vertex == vertex) return p;
    }
    fail(vertex ? ErrorCode::UnknownVertex : ErrorCode::UnknownArrow, "no provenance for '" + id + "'");
  }
};

namespace detail {

/// base + suffix, with further suffixes until the id is unused.
inline std::string fresh_id(std::string base, const std::set<std::string>& taken, const std::string& suffix) {
  base += suffix;
  while (taken.contains(base)) base += suffix;
  return base;
}

/// candidate itself if unused, else candidate with primes appended.
inline std::string unused_id(const std::string& candidate, const std::set<std::string>& taken) {
  return taken.contains(candidate) ? fresh_id(candidate, taken, "'") : candidate;
}

inline std::string chain_rules(const std::string& first, const std::string& second) {
  if (first == "survivor") return second;
  if (second == "survivor") return first;
  return first + ">" + second;
}

inline std::set<std::string> all_ids(const Digraph& g) {
  std::set<std::string> ids(g.vertices().begin(), g.vertices().end());
  for (const auto& a : g.arrows()) ids.insert(a.id);
  return ids;
}

/// Rewrites provenance of `later` (expressed in ids of `earlier`'s output) so
/// that it points back to `earlier`'s input.
inline std::vector<Provenance> compose(const std::vector<Provenance>& earlier, std::vector<Provenance> later) {
  std::map<std::pair<std::string, bool>, const Provenance*> index;
  for (const auto& p : earlier) index[{p.id, p.vertex}] = &p;
  for (auto& p : later) {
    auto it = index.find({p.origin, p.vertex});
    if (it == index.end()) {
      continue;
    }
    p.origin = it->second->origin;
    p.rule = chain_rules(it->second->rule, p.rule);
  }
  return later;
}

}  // namespace detail

/// Gamma/(H,S): drop H and the arrows into it, and add a sink v' for each
/// breaking vertex v not in S together with a copy e' of every arrow into v.
inline QuotientResult graded_quotient(const Digraph& g, const AdmissiblePair& pair) {
  require_admissible(g, pair);
  const auto in_h = g.mask_of(pair.H);
  const auto breaking = breaking_vertices(g, pair.H);
  VertexSet primed;
  std::set_difference(breaking.begin(), breaking.end(), pair.S.begin(), pair.S.end(),
                      std::inserter(primed, primed.end()));

  const auto taken = detail::all_ids(g);
  std::map<std::string, std::string> prime_of;
  std::set<std::string> used = taken;
  for (const auto& v : g.ordered(primed)) {
    prime_of[v] = detail::fresh_id(v, used, "'");
    used.insert(prime_of[v]);
  }

  QuotientResult out;
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (in_h[v]) continue;
    const auto& id = g.vertices()[v];
    vertices.push_back(id);
    out.provenance.push_back({id, true, id, "survivor"});
    if (auto it = prime_of.find(id); it != prime_of.end()) {
      vertices.push_back(it->second);
      out.provenance.push_back({it->second, true, id, "prime"});
    }
  }
  std::vector<ArrowClass> arrows;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    if (in_h[g.target_index(a)]) continue;
    const auto& e = g.arrows()[a];
    arrows.push_back(e);
    out.provenance.push_back({e.id, false, e.id, "survivor"});
    if (auto it = prime_of.find(e.target); it != prime_of.end()) {
      auto copy = e;
      copy.id = detail::fresh_id(e.id, used, "'");
      used.insert(copy.id);
      copy.target = it->second;
      out.provenance.push_back({copy.id, false, e.id, "prime"});
      arrows.push_back(std::move(copy));
    }
  }
  out.digraph = Digraph(g.name(), std::move(vertices), std::move(arrows));
  return out;
}

/// Identity provenance for an unchanged digraph.
inline QuotientResult identity_result(const Digraph& g) {
  QuotientResult out{g, {}};
  for (const auto& v : g.vertices()) out.provenance.push_back({v, true, v, "survivor"});
  for (const auto& a : g.arrows()) out.provenance.push_back({a.id, false, a.id, "survivor"});
  return out;
}

/// Replaces the first arrow of each exit-free cycle by a loop at its source.
/// Loops are left alone.
inline QuotientResult cycle_to_loop(const Digraph& g, const std::vector<GeometricCycle>& cycles) {
  std::set<std::string> seen_vertices;
  std::map<std::string, std::string> loop_of;  // first arrow -> new loop id
  auto used = detail::all_ids(g);
  for (const auto& given : cycles) {
    const auto c = GeometricCycle::canonical(g, given.arrows);
    if (cycle_has_exit(g, c)) fail(ErrorCode::CycleHasExit, "cycle " + c.to_string() + " has an exit");
    for (const auto& v : cycle_vertices(g, c)) {
      if (!seen_vertices.insert(v).second) {
        fail(ErrorCode::CyclesNotDisjoint, "cycles share vertex '" + v + "'");
      }
    }
    if (c.length() > 1) {
      loop_of[c.arrows.front()] = detail::fresh_id(c.arrows.front(), used, "'");
      used.insert(loop_of[c.arrows.front()]);
    }
  }

  QuotientResult out = identity_result(g);
  std::vector<ArrowClass> arrows;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    auto e = g.arrows()[a];
    if (auto it = loop_of.find(e.id); it != loop_of.end()) {
      out.provenance[g.vertex_count() + a] = {it->second, false, e.id, "loop"};
      e.id = it->second;
      e.target = e.source;
    }
    arrows.push_back(std::move(e));
  }
  out.digraph = Digraph(g.name(), g.vertices(), std::move(arrows));
  return out;
}

}  // namespace lpa
