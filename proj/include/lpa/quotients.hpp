#pragma once

// The severed digraph Gamma//J, the dlf decision, the isomorphism certificate,
// radical quotients and quotient dimensions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/digraph.hpp"
#include "lpa/field.hpp"
#include "lpa/graded_quotient.hpp"
#include "lpa/ideals.hpp"

namespace lpa {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) fail(ErrorCode::ResourceLimit, "count overflows 64 bits");
  return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) fail(ErrorCode::ResourceLimit, "count overflows 64 bits");
  return a * b;
}

/// beta re-expressed as canonical cycles of the graded quotient.
inline std::vector<GeometricCycle> canonical_beta(const Digraph& quotient, const IdealPresentation& j) {
  std::vector<GeometricCycle> out;
  for (const auto& gen : j.generators) out.push_back(GeometricCycle::canonical(quotient, gen.cycle.arrows));
  return out;
}

struct SeverParts {
  QuotientResult result;
  // graded-quotient id -> ids replacing it in Gamma//J
  std::map<std::string, std::vector<std::string>> vertexPieces;
  std::map<std::string, std::vector<std::string>> arrowPieces;
};

inline SeverParts sever_parts(const Digraph& g, const IdealPresentation& j) {
  require_valid(g, j);
  const auto graded = graded_quotient(g, j.pair);
  const auto beta = canonical_beta(graded.digraph, j);
  const auto looped = cycle_to_loop(graded.digraph, beta);
  const auto& lg = looped.digraph;

  // base vertex -> (loop id, degree)
  std::map<std::string, std::pair<std::string, unsigned>> split;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto& base = beta[i].base;
    std::string loop;
    for (auto a : lg.out_arrows(lg.index_of(base))) loop = lg.arrows()[a].id;
    split[base] = {loop, static_cast<unsigned>(j.generators[i].theta.degree())};
  }

  auto used = all_ids(lg);
  auto fresh = [&](const std::string& base, unsigned k) {
    auto id = unused_id(base + "." + std::to_string(k), used);
    used.insert(id);
    return id;
  };

  std::vector<std::string> vertices;
  std::vector<Provenance> prov;
  std::map<std::string, std::vector<std::string>> pieces, arrow_pieces;
  for (const auto& v : lg.vertices()) {
    auto it = split.find(v);
    if (it == split.end()) {
      vertices.push_back(v);
      prov.push_back({v, true, v, "survivor"});
      continue;
    }
    for (unsigned k = 1; k <= it->second.second; ++k) {
      auto id = fresh(v, k);
      pieces[v].push_back(id);
      vertices.push_back(id);
      prov.push_back({id, true, v, "split"});
    }
  }
  std::vector<ArrowClass> arrows;
  for (const auto& e : lg.arrows()) {
    auto it = split.find(e.target);
    if (it == split.end()) {
      arrows.push_back(e);
      prov.push_back({e.id, false, e.id, "survivor"});
      continue;
    }
    if (e.id == it->second.first) continue;  // the loop disappears
    for (unsigned k = 1; k <= it->second.second; ++k) {
      auto copy = e;
      copy.id = fresh(e.id, k);
      copy.target = pieces[e.target][k - 1];
      prov.push_back({copy.id, false, e.id, "split"});
      arrow_pieces[e.id].push_back(copy.id);
      arrows.push_back(std::move(copy));
    }
  }
  SeverParts out;
  out.result.digraph = Digraph(g.name(), std::move(vertices), std::move(arrows));
  out.result.provenance = compose(compose(graded.provenance, looped.provenance), std::move(prov));
  out.vertexPieces = std::move(pieces);
  out.arrowPieces = std::move(arrow_pieces);
  return out;
}

}  // namespace detail

/// Gamma//J. Depends only on the degrees of the cycle polynomials, so it is
/// defined whether or not J is dlf.
inline QuotientResult sever(const Digraph& g, const IdealPresentation& j) {
  return detail::sever_parts(g, j).result;
}

struct CycleDlfReport {
  std::string label;
  DlfVerdict verdict;
};

struct LpaVerdict {
  bool isLPA = true;
  std::vector<CycleDlfReport> cycles;
  std::optional<QuotientResult> severed;

  /// First failing cycle, formatted for the CLI.
  std::string summary() const {
    if (isLPA) return "isLPA";
    for (const auto& c : cycles) {
      if (!c.verdict.dlf) return "notLPA: cycle " + c.label + ": " + c.verdict.witness();
    }
    return "notLPA";
  }
};

inline LpaVerdict decide_lpa_quotient(const Digraph& g, const IdealPresentation& j) {
  require_valid(g, j);
  LpaVerdict out;
  for (const auto& gen : j.generators) {
    out.cycles.push_back({gen.label, is_dlf(gen.theta)});
    out.isLPA = out.isLPA && out.cycles.back().verdict.dlf;
  }
  if (out.isLPA) out.severed = sever(g, j);
  return out;
}

// ---------------------------------------------------------------------------
// Certificate

struct LinearTerm {
  FieldValue coefficient;
  std::string id;
};

struct GeneratorImage {
  std::string generator;
  std::vector<LinearTerm> image;

  std::string to_string() const {
    std::string s = generator + " ->";
    for (std::size_t i = 0; i < image.size(); ++i) {
      s += (i == 0 ? " " : " + ") + image[i].coefficient.to_string() + "*" + image[i].id;
    }
    return s;
  }
};

struct IsoCertificate {
  std::vector<GeneratorImage> generatorImages;
};

/// Images of the generators of L(Gamma/(H,S)) in L(Gamma//J). The first arrow
/// of each cycle in beta is listed under the cycle's label.
inline IsoCertificate iso_certificate(const Digraph& g, const IdealPresentation& j) {
  require_valid(g, j);
  const auto graded = graded_quotient(g, j.pair).digraph;
  const auto beta = detail::canonical_beta(graded, j);
  const auto one = FieldValue::one(j.field);

  std::map<std::string, std::vector<FieldValue>> roots_at;  // base vertex -> roots
  std::map<std::string, std::string> label_of_first;        // first arrow -> label
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto verdict = is_dlf(j.generators[i].theta);
    if (!verdict.dlf) {
      fail(ErrorCode::NotDlf, "cycle " + j.generators[i].label + ": " + verdict.witness());
    }
    auto& roots = roots_at[beta[i].base];
    roots = verdict.roots;
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
    label_of_first[beta[i].arrows.front()] = j.generators[i].label;
  }

  const auto parts = detail::sever_parts(g, j);
  const auto& vertex_pieces = parts.vertexPieces;
  const auto& arrow_pieces = parts.arrowPieces;

  IsoCertificate cert;
  for (const auto& v : graded.vertices()) {
    GeneratorImage img{v, {}};
    if (auto it = vertex_pieces.find(v); it != vertex_pieces.end()) {
      for (const auto& piece : it->second) img.image.push_back({one, piece});
    } else {
      img.image.push_back({one, v});
    }
    cert.generatorImages.push_back(std::move(img));
  }
  for (const auto& e : graded.arrows()) {
    if (auto it = label_of_first.find(e.id); it != label_of_first.end()) {
      const auto& base = e.source;
      GeneratorImage img{it->second, {}};
      const auto& roots = roots_at[base];
      const auto& pieces = vertex_pieces.at(base);
      for (std::size_t k = 0; k < roots.size(); ++k) img.image.push_back({roots[k], pieces[k]});
      cert.generatorImages.push_back(std::move(img));
      continue;
    }
    GeneratorImage img{e.id, {}};
    if (auto it = arrow_pieces.find(e.id); it != arrow_pieces.end()) {
      for (const auto& piece : it->second) img.image.push_back({one, piece});
    } else {
      img.image.push_back({one, e.id});
    }
    cert.generatorImages.push_back(std::move(img));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Radical quotient

struct RadicalReport {
  IdealPresentation jPrime;
  QuotientResult severed;
  std::vector<std::pair<std::string, unsigned>> degreeDrops;
  bool hypothesisHolds = true;  // every squarefree part splits over the field
};

inline RadicalReport radical_quotient(const Digraph& g, const IdealPresentation& j) {
  require_valid(g, j);
  RadicalReport out;
  out.jPrime = j;
  for (auto& gen : out.jPrime.generators) {
    const auto reduced = squarefree_part(gen.theta);
    out.degreeDrops.emplace_back(gen.label, static_cast<unsigned>(gen.theta.degree() - reduced.degree()));
    if (!is_dlf(reduced).dlf) out.hypothesisHolds = false;
    gen.theta = reduced;
  }
  out.severed = sever(g, out.jPrime);
  return out;
}

// ---------------------------------------------------------------------------
// Dimensions

namespace detail {

/// Number of paths ending at each vertex off the given cycle set, counted
/// with multiplicity. Requires the digraph minus those cycles to be acyclic.
inline std::vector<std::uint64_t> paths_ending(const Digraph& g, const std::vector<bool>& on_cycle) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> count(n, 0);
  std::vector<int> state(n, 0);  // 0 new, 1 active, 2 done
  std::function<std::uint64_t(std::size_t)> visit = [&](std::size_t v) -> std::uint64_t {
    if (state[v] == 2) return count[v];
    if (state[v] == 1) fail(ErrorCode::UnsupportedShape, "cycle outside the split cycles");
    state[v] = 1;
    std::uint64_t total = 1;
    for (auto a : g.in_arrows(v)) {
      const auto s = g.source_index(a);
      if (on_cycle[s]) continue;
      const auto& m = g.arrows()[a].multiplicity;
      if (m.omega) fail(ErrorCode::UnsupportedShape, "omega arrow '" + g.arrows()[a].id + "'");
      total = checked_add(total, checked_mul(m.count, visit(s)));
    }
    state[v] = 2;
    return count[v] = total;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (!on_cycle[v]) visit(v);
  }
  return count;
}

}  // namespace detail

/// Number of paths ending at the base of an exit-free cycle that do not run
/// through the whole cycle.
inline std::uint64_t cycle_path_count(const Digraph& g, const GeometricCycle& c,
                                      const std::vector<std::uint64_t>& paths, const std::vector<bool>& on_cycle) {
  std::uint64_t total = c.length();
  const std::set<std::string> own(c.arrows.begin(), c.arrows.end());
  for (const auto& v : cycle_vertices(g, c)) {
    for (auto a : g.in_arrows(g.index_of(v))) {
      if (own.contains(g.arrows()[a].id)) continue;
      const auto s = g.source_index(a);
      if (on_cycle[s]) fail(ErrorCode::UnsupportedShape, "arrow between split cycles");
      const auto& m = g.arrows()[a].multiplicity;
      if (m.omega) fail(ErrorCode::UnsupportedShape, "omega arrow '" + g.arrows()[a].id + "'");
      total = detail::checked_add(total, detail::checked_mul(m.count, paths[s]));
    }
  }
  return total;
}

/// dim L(Gamma)/J, or dim L(Gamma) when j is absent.
inline std::uint64_t quotient_dimension(const Digraph& g, const std::optional<IdealPresentation>& j,
                                        std::size_t cycle_limit = 10'000) {
  Digraph w = g;
  std::vector<GeometricCycle> beta;
  std::vector<unsigned> degrees;
  if (j) {
    require_valid(g, *j);
    w = graded_quotient(g, j->pair).digraph;
    beta = detail::canonical_beta(w, *j);
    for (const auto& gen : j->generators) degrees.push_back(static_cast<unsigned>(gen.theta.degree()));
  }
  if (!w.is_row_finite()) fail(ErrorCode::UnsupportedShape, "digraph has an omega arrow");
  const auto cycles = enumerate_cycles(w, cycle_limit);
  if (cycles.size() != beta.size()) {
    fail(ErrorCode::UnsupportedShape, std::to_string(cycles.size()) + " cycles but " + std::to_string(beta.size()) +
                                          " polynomials");
  }
  const std::set<GeometricCycle> split(beta.begin(), beta.end());
  for (const auto& info : cycles) {
    if (!split.contains(info.cycle)) fail(ErrorCode::UnsupportedShape, "cycle " + info.cycle.to_string() + " is not split");
  }
  std::vector<bool> on_cycle(w.vertex_count(), false);
  for (const auto& c : beta) {
    for (const auto& v : cycle_vertices(w, c)) on_cycle[w.index_of(v)] = true;
  }
  const auto paths = detail::paths_ending(w, on_cycle);
  std::uint64_t dim = 0;
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    if (w.is_sink(v)) dim = detail::checked_add(dim, detail::checked_mul(paths[v], paths[v]));
  }
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto pc = cycle_path_count(w, beta[i], paths, on_cycle);
    dim = detail::checked_add(dim, detail::checked_mul(degrees[i], detail::checked_mul(pc, pc)));
  }
  return dim;
}

}  // namespace lpa
