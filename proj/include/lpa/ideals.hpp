#pragma once

// Ideals as quadruples (H, S, beta, theta): validation, the graded part, the
// order on admissible pairs and its lattice, and stratum counting over prime
// fields.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/digraph.hpp"
#include "lpa/field.hpp"
#include "lpa/graded_quotient.hpp"

namespace lpa {

/// One member of beta: a labelled cycle of Gamma/(H,S) and its polynomial.
struct CycleGenerator {
  std::string label;
  GeometricCycle cycle;
  Polynomial theta;

  friend bool operator==(const CycleGenerator&, const CycleGenerator&) = default;
};

struct IdealPresentation {
  std::string name;
  FieldSpec field;
  AdmissiblePair pair;
  std::vector<CycleGenerator> generators;

  bool is_graded() const { return generators.empty(); }

  std::vector<GeometricCycle> beta() const {
    std::vector<GeometricCycle> out;
    for (const auto& c : generators) out.push_back(c.cycle);
    return out;
  }

  friend bool operator==(const IdealPresentation&, const IdealPresentation&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

namespace detail {

inline void require_known_ids(const Digraph& g, const IdealPresentation& j) {
  for (const auto& v : j.pair.H) g.index_of(v);
  for (const auto& v : j.pair.S) g.index_of(v);
  for (const auto& c : j.generators) {
    for (const auto& e : c.cycle.arrows) g.arrow_index_of(e);
  }
}

}  // namespace detail

inline ValidationReport validate_ideal(const Digraph& g, const IdealPresentation& j) {
  detail::require_known_ids(g, j);
  ValidationReport r;
  auto note = [&](std::string m) { r.violations.push_back(std::move(m)); };

  const bool hereditary = is_hereditary(g, j.pair.H);
  if (!hereditary) note("H is not hereditary");
  if (!is_saturated(g, j.pair.H)) note("H is not saturated");
  if (hereditary) {
    const auto b = breaking_vertices(g, j.pair.H);
    for (const auto& v : g.ordered(j.pair.S)) {
      if (!b.contains(v)) note("S contains '" + v + "', which is not a breaking vertex of H");
    }
  }
  if (!r.valid()) {
    if (!j.generators.empty()) note("cycles cannot be checked without an admissible pair");
    return r;
  }

  const auto quotient = graded_quotient(g, j.pair).digraph;
  std::set<GeometricCycle> seen;
  std::set<std::string> labels;
  for (const auto& gen : j.generators) {
    const std::string name = "cycle " + gen.label;
    if (!labels.insert(gen.label).second) note(name + ": duplicate label");
    if (!(gen.theta.spec() == j.field)) note(name + ": polynomial over " + gen.theta.spec().to_string());
    if (gen.theta.degree() < 1) note(name + ": polynomial has degree < 1");
    if (!gen.theta.is_zero() && !gen.theta.constant_term().is_one()) note(name + ": constant term is not 1");

    bool present = true;
    for (const auto& e : gen.cycle.arrows) {
      if (!quotient.has_arrow(e)) {
        note(name + ": arrow '" + e + "' is not in the quotient digraph");
        present = false;
      }
    }
    if (!present) continue;
    std::optional<GeometricCycle> c;
    try {
      c = GeometricCycle::canonical(quotient, gen.cycle.arrows);
    } catch (const Error& err) {
      note(name + ": " + err.detail());
      continue;
    }
    if (cycle_has_exit(quotient, *c)) note(name + ": cycle has exit in the quotient digraph");
    if (!seen.insert(*c).second) note(name + ": repeats another cycle");
  }
  return r;
}

inline void require_valid(const Digraph& g, const IdealPresentation& j) {
  const auto r = validate_ideal(g, j);
  if (!r.valid()) fail(ErrorCode::InvalidIdeal, r.violations.front());
}

inline IdealPresentation graded_part(const IdealPresentation& j) {
  IdealPresentation out = j;
  out.generators.clear();
  return out;
}

/// a <= b iff H_a is in H_b and H_a + S_a is in H_b + S_b.
inline bool pair_order(const Digraph& g, const AdmissiblePair& a, const AdmissiblePair& b) {
  require_admissible(g, a);
  require_admissible(g, b);
  auto subset = [](const VertexSet& x, const VertexSet& y) { return std::includes(y.begin(), y.end(), x.begin(), x.end()); };
  VertexSet ua = a.H, ub = b.H;
  ua.insert(a.S.begin(), a.S.end());
  ub.insert(b.S.begin(), b.S.end());
  return subset(a.H, b.H) && subset(ua, ub);
}

/// All admissible pairs, sorted by H (size, then declaration order), then S.
inline std::vector<AdmissiblePair> enumerate_admissible_pairs(const Digraph& g, std::size_t limit = 10'000) {
  std::vector<AdmissiblePair> out;
  for (const auto& h : enumerate_hereditary_saturated(g, limit)) {
    const auto b = g.ordered(breaking_vertices(g, h));
    if (b.size() >= 63) fail(ErrorCode::ResourceLimit, "too many breaking vertices");
    std::vector<VertexSet> subsets;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b.size()); ++mask) {
      VertexSet s;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (mask >> i & 1) s.insert(b[i]);
      }
      subsets.push_back(std::move(s));
    }
    for (auto& s : sorted_sets(g, std::move(subsets))) {
      out.push_back({h, std::move(s)});
      if (out.size() > limit) fail(ErrorCode::ResourceLimit, "more than " + std::to_string(limit) + " pairs");
    }
  }
  return out;
}

struct PairLattice {
  std::vector<AdmissiblePair> elements;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
  std::vector<std::vector<bool>> leq;

  std::size_t index_of(const AdmissiblePair& p) const {
    auto it = std::find(elements.begin(), elements.end(), p);
    if (it == elements.end()) fail(ErrorCode::NotAdmissible, "pair is not in the lattice");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

inline PairLattice pair_lattice(const Digraph& g, std::size_t limit = 10'000) {
  PairLattice lat;
  lat.elements = enumerate_admissible_pairs(g, limit);
  const std::size_t n = lat.elements.size();
  lat.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) lat.leq[a][b] = pair_order(g, lat.elements[a], lat.elements[b]);
  }
  // Greatest common lower bound (or least upper bound) by search.
  auto extremum = [&](std::size_t a, std::size_t b, bool lower) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < n; ++c) {
      const bool bound = lower ? (lat.leq[c][a] && lat.leq[c][b]) : (lat.leq[a][c] && lat.leq[b][c]);
      if (!bound) continue;
      if (!best || (lower ? lat.leq[*best][c] : lat.leq[c][*best])) best = c;
    }
    if (!best) fail(ErrorCode::MeetJoinFailure, "no bound found");
    for (std::size_t c = 0; c < n; ++c) {
      const bool bound = lower ? (lat.leq[c][a] && lat.leq[c][b]) : (lat.leq[a][c] && lat.leq[b][c]);
      if (bound && !(lower ? lat.leq[c][*best] : lat.leq[*best][c])) {
        fail(ErrorCode::MeetJoinFailure, "bounds have no extremum");
      }
    }
    return *best;
  };
  lat.meet.assign(n, std::vector<std::size_t>(n));
  lat.join.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      lat.meet[a][b] = extremum(a, b, true);
      lat.join[a][b] = extremum(a, b, false);
    }
  }
  return lat;
}

// ---------------------------------------------------------------------------
// Strata

struct StratumKey {
  AdmissiblePair pair;
  std::vector<GeometricCycle> beta;
  std::vector<unsigned> degrees;  // parallel to beta
};

struct StratumCount {
  StratumKey key;
  BigInt parameterCount;
  BigInt dlfCount;
};

struct StrataLimits {
  std::size_t maxPairs = 10'000;
  std::size_t maxCycles = 10'000;
  std::uint64_t maxParamPoints = 1'000'000;
  std::size_t maxStrata = 1'000'000;
};

/// Counts polynomials 1 + a_1 x + ... + a_d x^d over F_p with a_d != 0, and
/// how many of them are dlf, by running through every coefficient tuple.
struct DegreeCount {
  std::uint64_t parameters = 0;
  std::uint64_t dlf = 0;
};

inline DegreeCount count_degree(const FieldSpec& field, unsigned d, std::uint64_t max_points) {
  const std::uint64_t p = field.characteristic();
  std::uint64_t points = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (points > max_points / p) fail(ErrorCode::ResourceLimit, "p^d exceeds the parameter bound");
    points *= p;
  }
  DegreeCount out;
  std::vector<long long> coeffs(d + 1, 0);
  coeffs[0] = 1;
  for (std::uint64_t code = 0; code < points; ++code) {
    std::uint64_t rest = code;
    for (unsigned i = 1; i <= d; ++i) {
      coeffs[i] = static_cast<long long>(rest % p);
      rest /= p;
    }
    if (coeffs[d] == 0) continue;
    ++out.parameters;
    if (is_dlf(Polynomial::from_ints(field, coeffs)).dlf) ++out.dlf;
  }
  return out;
}

inline std::vector<StratumCount> enumerate_strata(const Digraph& g, const FieldSpec& field, unsigned max_deg,
                                                  const StrataLimits& limits = {}) {
  if (!field.is_prime_field()) fail(ErrorCode::InvalidField, "strata are counted over prime fields only");
  if (max_deg < 1) fail(ErrorCode::ResourceLimit, "maximum degree must be positive");
  std::vector<DegreeCount> per_degree(max_deg + 1);
  for (unsigned d = 1; d <= max_deg; ++d) per_degree[d] = count_degree(field, d, limits.maxParamPoints);

  std::vector<StratumCount> out;
  for (const auto& pair : enumerate_admissible_pairs(g, limits.maxPairs)) {
    const auto quotient = graded_quotient(g, pair).digraph;
    std::vector<GeometricCycle> free_cycles;
    for (const auto& info : enumerate_cycles(quotient, limits.maxCycles)) {
      if (!info.hasExit) free_cycles.push_back(info.cycle);
    }
    const std::size_t k = free_cycles.size();
    if (k >= 63) fail(ErrorCode::ResourceLimit, "too many exit-free cycles");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      StratumKey key{pair, {}, {}};
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) key.beta.push_back(free_cycles[i]);
      }
      // every degree function beta -> [1, max_deg], odometer order
      std::vector<unsigned> degrees(key.beta.size(), 1);
      while (true) {
        StratumCount sc{key, 1, 1};
        sc.key.degrees = degrees;
        for (auto d : degrees) {
          sc.parameterCount *= per_degree[d].parameters;
          sc.dlfCount *= per_degree[d].dlf;
        }
        out.push_back(std::move(sc));
        if (out.size() > limits.maxStrata) fail(ErrorCode::ResourceLimit, "too many strata");
        std::size_t i = 0;
        while (i < degrees.size() && degrees[i] == max_deg) degrees[i++] = 1;
        if (i == degrees.size()) break;
        ++degrees[i];
      }
    }
  }
  return out;
}

}  // namespace lpa
