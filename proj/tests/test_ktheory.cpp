#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace lpa;
using lpa::test::error_of;
using lpa::test::load_graph;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Digraph make(std::vector<std::string> vs, std::vector<ArrowClass> as) { return Digraph("g", std::move(vs), std::move(as)); }

IdealPresentation graded(const AdmissiblePair& p) { return {"g", Q, p, {}}; }

/// Vertex items, phi generators of every pair, and corners at breaking vertices.
std::vector<ProjectivePresentation> probe_presentations(const Digraph& g) {
  std::vector<ProjectivePresentation> out{{}};
  for (const auto& v : g.vertices()) out.push_back(ProjectivePresentation::vertices({v}));
  for (std::size_t a = 0; a < g.vertex_count(); ++a) {
    for (std::size_t b = a + 1; b < g.vertex_count(); ++b) {
      out.push_back(ProjectivePresentation::vertices({g.vertices()[a], g.vertices()[b]}));
    }
  }
  for (const auto& pair : enumerate_admissible_pairs(g)) {
    out.push_back(galois_phi(g, pair).generators(g));
    for (const auto& u : breaking_vertices(g, pair.H)) {
      out.push_back(galois_phi(g, {pair.H, {u}}).generators(g));
    }
  }
  return out;
}

ProjectivePresentation without(const ProjectivePresentation& p, std::size_t i) {
  auto q = p;
  q.items.erase(q.items.begin() + static_cast<std::ptrdiff_t>(i));
  return q;
}

}  // namespace

TEST_CASE("monoid_presentation") {
  const auto p = monoid_presentation(load_graph("sq2"));
  CHECK(p.generators == std::vector<std::string>{"v1", "w1", "w2"});
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].vertex == "v1");
  CHECK(p.relations[0].targets == MonoidElement{{"v1", 1}, {"w1", 1}, {"w2", 1}});
  CHECK(p.relations[0].targets.to_string() == "[v1] + [w1] + [w2]");

  CHECK(monoid_presentation(load_graph("two-points")).relations.empty());
  const auto path = monoid_presentation(load_graph("path"));
  REQUIRE(path.relations.size() == 1);
  CHECK(path.relations[0].targets == MonoidElement{{"b", 1}});

  const auto diamond = monoid_presentation(load_graph("diamond"));
  CHECK(diamond.relations.back().targets.to_string() == "2*[t]");
  CHECK(error_of([] { monoid_presentation(load_graph("breaking")); }) == ErrorCode::NotRowFinite);
}

TEST_CASE("monoid_congruent") {
  CHECK(monoid_congruent(load_graph("path"), {{"a", 1}}, {{"b", 1}}, 1) == Congruence::Congruent);
  const auto sq2 = load_graph("sq2");
  CHECK(monoid_congruent(sq2, {{"v1", 1}}, {{"v1", 1}, {"w1", 1}, {"w2", 1}}, 1) == Congruence::Congruent);
  CHECK(monoid_congruent(sq2, {{"v1", 1}}, {{"v1", 1}, {"w1", 2}, {"w2", 2}}, 2) == Congruence::Congruent);
  CHECK(monoid_congruent(sq2, {{"v1", 1}}, {{"v1", 1}, {"w1", 2}, {"w2", 2}}, 1) == Congruence::NotWithinDepth);
  for (unsigned depth : {1u, 4u, 12u}) {
    CHECK(monoid_congruent(load_graph("two-points"), {{"v1", 1}}, {{"v2", 1}}, depth) == Congruence::NotWithinDepth);
  }
  CHECK(monoid_congruent(load_graph("diamond"), {{"s", 1}}, {{"t", 3}}, 3) == Congruence::Congruent);
  CHECK(error_of([] { monoid_congruent(load_graph("breaking"), {}, {}, 1); }) == ErrorCode::NotRowFinite);
  CHECK(error_of([] { monoid_congruent(load_graph("sq2"), {{"x", 1}}, {}, 1); }) == ErrorCode::UnknownVertex);
}

TEST_CASE("Galois maps") {
  SECTION("S_q^2 round trip") {
    const auto g = load_graph("sq2");
    const AdmissiblePair w2{{"w2"}, {}};
    CHECK(galois_psi(g, galois_phi(g, w2)) == w2);
  }
  SECTION("saturation forces the branch vertex") {
    const auto g = load_graph("fork");
    CHECK(galois_psi(g, ProjectivePresentation::vertices({"w1", "w2"})) == AdmissiblePair{{"v", "w1", "w2"}, {}});
  }
  SECTION("empty generators") {
    CHECK(galois_psi(load_graph("sq2"), ProjectivePresentation{}) == AdmissiblePair{});
  }
  SECTION("breaking vertex instance") {
    const auto g = load_graph("breaking");
    const AdmissiblePair hv{{"h"}, {"v"}};
    const auto gens = galois_phi(g, hv).generators(g);
    CHECK(io::serialize_projective(gens) == "P: h\ncorner v {e0#0}\n");
    CHECK(galois_psi(g, gens) == hv);
    CHECK(galois_psi(g, galois_phi(g, {{"h"}, {}})) == AdmissiblePair{{"h"}, {}});
  }
  SECTION("a corner whose escaping targets are in H joins H") {
    const auto g = make({"v", "h", "w"}, {{"x", "v", "h", Multiplicity::infinite()}, {"e", "v", "w", Multiplicity::finite(2)}});
    ProjectivePresentation p;
    p.items.push_back({"w", std::nullopt});
    p.items.push_back({"v", std::set<ArrowInstance>{{"e", 0}}});
    CHECK(galois_psi(g, p) == AdmissiblePair{{"v", "h", "w"}, {}});
  }
  SECTION("identities over the corpus") {
    for (const auto& g : test::corpus_digraphs()) {
      if (g.vertex_count() > 8) continue;
      for (const auto& pair : enumerate_admissible_pairs(g)) {
        INFO(g.name());
        const auto phi = galois_phi(g, pair);
        CHECK(galois_psi(g, phi) == pair);
        CHECK(galois_phi(g, galois_psi(g, phi)) == phi);
        CHECK(is_orthogonal(g, phi.generators(g), graded(pair)));
      }
    }
  }
  SECTION("validation") {
    const auto g = load_graph("breaking");
    ProjectivePresentation p;
    p.items.push_back({"v", std::set<ArrowInstance>{}});
    CHECK(error_of([&] { galois_psi(g, p); }) == ErrorCode::MalformedGenerators);
    p.items[0].corner = std::set<ArrowInstance>{{"e0", 1}};
    CHECK(error_of([&] { galois_psi(g, p); }) == ErrorCode::MalformedGenerators);
    const auto fork = load_graph("fork");
    ProjectivePresentation all;
    all.items.push_back({"v", std::set<ArrowInstance>{{"e1", 0}, {"e2", 0}}});
    CHECK(error_of([&] { galois_psi(fork, all); }) == ErrorCode::MalformedGenerators);
    CHECK(error_of([&] { galois_phi(fork, {{"v"}, {}}); }) == ErrorCode::NotAdmissible);
  }
}

TEST_CASE("closed submonoids and monoid congruence") {
  for (const auto& g : test::corpus_digraphs()) {
    if (g.vertex_count() > 8 || !g.is_row_finite()) continue;
    const auto sets = enumerate_hereditary_saturated(g);
    std::set<AdmissiblePair> distinct;
    for (const auto& pair : enumerate_admissible_pairs(g)) {
      CHECK(pair.S.empty());
      distinct.insert(galois_phi(g, pair).data);
    }
    CHECK(distinct.size() == sets.size());
    const auto pres = monoid_presentation(g);
    for (const auto& r : pres.relations) {
      CHECK(monoid_congruent(g, {{r.vertex, 1}}, r.targets, 1) == Congruence::Congruent);
    }
    // an order ideal never identifies an outside vertex with an inside one
    for (const auto& h : sets) {
      for (const auto& u : g.vertices()) {
        if (h.contains(u)) continue;
        for (const auto& w : h) {
          INFO(g.name() << " " << u << " " << w);
          CHECK(monoid_congruent(g, {{u, 1}}, {{w, 1}}, 8) == Congruence::NotWithinDepth);
        }
      }
    }
    // singleton generators give the closure
    for (const auto& v : g.vertices()) {
      CHECK(galois_psi(g, ProjectivePresentation::vertices({v})).H == test::brute_closure(g, {v}));
    }
  }
}

TEST_CASE("is_orthogonal") {
  const auto sq2 = load_graph("sq2");
  const auto j = graded({{"w2"}, {}});
  CHECK(is_orthogonal(sq2, ProjectivePresentation::vertices({"w2"}), j));
  CHECK_FALSE(is_orthogonal(sq2, ProjectivePresentation::vertices({"w1"}), j));
  for (const auto& g : test::corpus_digraphs()) {
    for (const auto& pair : enumerate_admissible_pairs(g)) CHECK(is_orthogonal(g, {}, graded(pair)));
  }
  const auto b = load_graph("breaking");
  const auto corner = test::load_projective("breaking-corner");
  CHECK(is_orthogonal(b, corner, graded({{"h"}, {"v"}})));
  CHECK_FALSE(is_orthogonal(b, corner, graded({{"h"}, {}})));
  CHECK_FALSE(is_orthogonal(b, corner, graded({{"w"}, {}})));
  CHECK(is_orthogonal(b, corner, graded({{"v", "h", "w"}, {}})));
}

TEST_CASE("orthogonality is monotone") {
  std::size_t checked = 0;
  for (const auto& g : test::corpus_digraphs()) {
    if (g.vertex_count() > 8) continue;
    const auto pairs = enumerate_admissible_pairs(g);
    for (const auto& p : probe_presentations(g)) {
      for (const auto& a : pairs) {
        if (!is_orthogonal(g, p, graded(a))) continue;
        for (const auto& b : pairs) {
          if (pair_order(g, a, b)) {
            INFO(g.name() << " " << io::serialize_projective(p));
            CHECK(is_orthogonal(g, p, graded(b)));
            ++checked;
          }
        }
        for (std::size_t i = 0; i < p.items.size(); ++i) CHECK(is_orthogonal(g, without(p, i), graded(a)));
        // a vertex item is orthogonal exactly when it lies in H
        for (const auto& item : p.items) {
          if (!item.is_corner()) CHECK(a.H.contains(item.vertex));
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("classify_simple_projectives") {
  const auto ek = classify_simple_projectives(load_graph("ek-severed"));
  REQUIRE(ek.size() == 3);
  CHECK(ek[0].representative == "v.1");
  CHECK(ek[0].members == std::vector<std::string>{"v.1"});
  CHECK(classify_simple_projectives(load_graph("sq3")).empty());
  const auto path = classify_simple_projectives(load_graph("path"));
  REQUIRE(path.size() == 1);
  CHECK(path[0].representative == "b");
  CHECK(path[0].members == std::vector<std::string>{"a", "b"});
  for (const auto& g : test::corpus_digraphs()) {
    std::size_t members = 0, line_points = 0;
    for (const auto& c : classify_simple_projectives(g)) members += c.members.size();
    for (const auto& r : classify_vertices(g)) line_points += r.linePoint;
    CHECK(members == line_points);
  }
}

TEST_CASE("classify_fgips") {
  const auto sq3 = classify_fgips(load_graph("sq3"));
  REQUIRE(sq3.size() == 1);
  CHECK(sq3[0].cycle.to_string() == "C2");
  CHECK(sq3[0].support == std::vector<std::string>{"v1", "v2"});
  CHECK(classify_fgips(load_graph("tree")).empty());
  const auto ek = classify_fgips(load_graph("ek"));
  REQUIRE(ek.size() == 1);
  CHECK(ek[0].cycle.to_string() == "e f g h");
  CHECK(ek[0].support == std::vector<std::string>{"v", "x", "y", "z"});
  const auto tailed = classify_fgips(load_graph("ek-tailed"));
  REQUIRE(tailed.size() == 1);
  CHECK(tailed[0].support.size() == 6);
}

TEST_CASE("corner_classify") {
  const auto sq3 = load_graph("sq3");
  CHECK(corner_classify(sq3, "v2") == CornerKind::LaurentRing);
  CHECK(corner_classify(sq3, "v1") == CornerKind::Other);
  CHECK(corner_classify(load_graph("sq2"), "v1") == CornerKind::Other);
  CHECK(corner_classify(load_graph("sq2"), "w1") == CornerKind::Field);
  CHECK(corner_classify(load_graph("ek"), "y") == CornerKind::LaurentRing);
  CHECK(corner_classify(load_graph("double-loop"), "v") == CornerKind::Other);
  CHECK(error_of([&] { corner_classify(sq3, "q"); }) == ErrorCode::UnknownVertex);
  for (const auto& g : test::corpus_digraphs()) {
    bool laurent = false;
    for (const auto& v : g.vertices()) {
      const auto k = corner_classify(g, v);
      laurent = laurent || k == CornerKind::LaurentRing;
      CHECK((k == CornerKind::Field) == g.is_sink(g.index_of(v)));
    }
    CHECK(classify_fgips(g).empty() == !laurent);
  }
}

TEST_CASE("acyclic_decomposition") {
  const auto ek = acyclic_decomposition(load_graph("ek-severed"));
  CHECK(ek.blocks == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{4, 3}});
  CHECK(ek.dimension() == 48);
  CHECK(ek.to_string() == "48 = 3 × M_4");
  CHECK(acyclic_decomposition(load_graph("point")).blocks == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}});
  const auto fork = acyclic_decomposition(load_graph("fork"));
  CHECK(fork.blocks == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}});
  CHECK(fork.dimension() == 8);
  CHECK(acyclic_decomposition(load_graph("diamond")).to_string() == "49 = 1 × M_7");
  CHECK(acyclic_decomposition(load_graph("tree")).to_string() == "43 = 2 × M_3 + 1 × M_5");
  CHECK(error_of([] { acyclic_decomposition(load_graph("loop")); }) == ErrorCode::NotAcyclic);
  CHECK(error_of([] { acyclic_decomposition(load_graph("breaking")); }) == ErrorCode::NotRowFinite);
}

TEST_CASE("end_finite_dim") {
  SECTION("Ek severed from the tail source") {
    const auto v = end_finite_dim(load_graph("ek-severed"), test::load_projective("ek-tail"));
    CHECK(v.finite);
    CHECK(v.decomposition.blocks == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 3}});
  }
  SECTION("reaching a cycle") {
    const auto v = end_finite_dim(load_graph("sq2"), test::load_projective("sq2-v1"));
    CHECK_FALSE(v.finite);
    CHECK(v.witness == "cycle C1");
  }
  SECTION("two copies of a sink") {
    const auto v = end_finite_dim(load_graph("dq2"), test::load_projective("w-twice"));
    CHECK(v.finite);
    CHECK(v.decomposition.blocks == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 1}});
  }
  SECTION("corners and omega arrows") {
    const auto b = load_graph("breaking");
    CHECK(end_finite_dim(b, test::load_projective("breaking-corner")).witness == "corner at v");
    CHECK(end_finite_dim(b, ProjectivePresentation::vertices({"v"})).witness == "omega arrow x");
    CHECK(end_finite_dim(b, ProjectivePresentation::vertices({"w"})).finite);
  }
  SECTION("agrees with path counts from the generators") {
    for (const auto& g : test::corpus_digraphs()) {
      if (!g.is_row_finite() || g.vertex_count() > 8) continue;
      for (const auto& v : g.vertices()) {
        const auto verdict = end_finite_dim(g, ProjectivePresentation::vertices({v, v}));
        const auto reach = full_subgraph(g, successors(g, {v}));
        INFO(g.name() << " " << v);
        CHECK(verdict.finite == is_acyclic(reach));
        if (!verdict.finite) continue;
        const auto paths = test::all_paths(reach);
        std::map<std::size_t, std::uint64_t> to_sink;
        for (const auto& p : paths) {
          const auto end = test::path_end(reach, p);
          if (p.start == reach.index_of(v) && reach.is_sink(end)) to_sink[end] += 2;
        }
        std::uint64_t dim = 0;
        for (const auto& [s, n] : to_sink) dim += n * n;
        CHECK(verdict.decomposition.dimension() == dim);
        if (reach.vertex_count() == 1 || classify_vertices(g)[g.index_of(v)].linePoint) {
          CHECK(end_finite_dim(g, ProjectivePresentation::vertices({v})).decomposition ==
                MatrixDecomposition::from_sizes({1}));
        }
      }
    }
  }
}
