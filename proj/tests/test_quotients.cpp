#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace lpa;
using lpa::test::error_of;
using lpa::test::load_graph;
using lpa::test::load_ideal;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);

Digraph make(std::vector<std::string> vs, std::vector<ArrowClass> as) { return Digraph("g", std::move(vs), std::move(as)); }

std::vector<std::string> sinks(const Digraph& g) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) out.push_back(g.vertices()[v]);
  }
  return out;
}

void check_provenance_covers(const QuotientResult& q) {
  std::set<std::pair<std::string, bool>> ids;
  for (const auto& p : q.provenance) CHECK(ids.insert({p.id, p.vertex}).second);
  CHECK(ids.size() == q.digraph.vertex_count() + q.digraph.arrow_count());
  for (const auto& v : q.digraph.vertices()) CHECK(ids.contains({v, true}));
  for (const auto& e : q.digraph.arrows()) CHECK(ids.contains({e.id, false}));
}

/// Sum over sinks of the squared number of paths ending there, by listing paths.
std::uint64_t explicit_dimension(const Digraph& g) {
  std::map<std::size_t, std::uint64_t> n;
  for (const auto& p : test::all_paths(g)) {
    const auto end = test::path_end(g, p);
    if (g.is_sink(end)) ++n[end];
  }
  std::uint64_t dim = 0;
  for (const auto& [v, k] : n) dim += k * k;
  return dim;
}

/// Ideals over every stratum of small corpus graphs, theta = (1 + x)^d.
std::vector<std::pair<Digraph, IdealPresentation>> stratum_ideals() {
  std::vector<std::pair<Digraph, IdealPresentation>> out;
  for (const auto& name : test::corpus_graphs()) {
    const auto g = load_graph(name);
    if (g.vertex_count() > 8) continue;
    for (const auto& s : enumerate_strata(g, FieldSpec::prime(7), 3)) {
      IdealPresentation j{"s", Q, s.key.pair, {}};
      for (std::size_t i = 0; i < s.key.beta.size(); ++i) {
        j.generators.push_back({"C" + std::to_string(i), s.key.beta[i], power(Polynomial(Q, {1, 1}), s.key.degrees[i])});
      }
      out.emplace_back(g, std::move(j));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("graded_quotient") {
  SECTION("S_q^2 by w2 is D_q^2") {
    const auto q = graded_quotient(load_graph("sq2"), {{"w2"}, {}});
    CHECK(test::isomorphic(q.digraph, load_graph("dq2")));
    CHECK(q.digraph.vertices() == std::vector<std::string>{"v1", "w1"});
    check_provenance_covers(q);
  }
  SECTION("the zero pair is the identity") {
    for (const auto& g : test::corpus_digraphs()) {
      const auto q = graded_quotient(g, {});
      CHECK(q.digraph == g);
      for (const auto& p : q.provenance) {
        CHECK(p.origin == p.id);
        CHECK(p.rule == "survivor");
      }
    }
  }
  SECTION("breaking vertex left out of S gets a primed sink") {
    const auto q = graded_quotient(load_graph("breaking"), {{"h"}, {}});
    CHECK(q.digraph.vertices() == std::vector<std::string>{"v", "v'", "w"});
    REQUIRE(q.digraph.arrow_count() == 1);
    CHECK(q.digraph.arrows()[0].id == "e0");
    CHECK(q.origin_of("v'", true).origin == "v");
    CHECK(q.origin_of("v'", true).rule == "prime");
    const auto with_s = graded_quotient(load_graph("breaking"), {{"h"}, {"v"}});
    CHECK(with_s.digraph.vertices() == std::vector<std::string>{"v", "w"});
  }
  SECTION("arrows into a breaking vertex are copied") {
    const auto g = make({"u", "v", "h", "w"},
                        {{"a", "u", "v", Multiplicity::finite(2)}, {"x", "v", "h", Multiplicity::infinite()}, {"e0", "v", "w"}});
    const auto q = graded_quotient(g, {{"h"}, {}});
    CHECK(q.digraph.vertices() == std::vector<std::string>{"u", "v", "v'", "w"});
    const auto& copy = q.digraph.arrow("a'");
    CHECK(copy.source == "u");
    CHECK(copy.target == "v'");
    CHECK(copy.multiplicity.count == 2);
    CHECK(q.origin_of("a'", false).origin == "a");
    check_provenance_covers(q);
  }
  SECTION("primes avoid existing ids") {
    const auto g = make({"v", "v'", "h", "w"}, {{"x", "v", "h", Multiplicity::infinite()}, {"e0", "v", "w"}});
    const auto q = graded_quotient(g, {{"h"}, {}});
    CHECK(q.digraph.has_vertex("v''"));
  }
  CHECK(error_of([] { graded_quotient(load_graph("path"), {{"a"}, {}}); }) == ErrorCode::NotAdmissible);
}

TEST_CASE("cycle_to_loop") {
  SECTION("triangle with tails, cut at e") {
    const auto g = load_graph("triangle-tails");
    const auto c = GeometricCycle::canonical(g, {"f", "g", "e"});
    const auto q = cycle_to_loop(g, {c});
    const auto expected = Digraph("triangle", {"p", "a", "t", "b", "c"},
                                  {{"i", "p", "a"}, {"j", "t", "b"}, {"f", "a", "b"}, {"g", "b", "c"}, {"e'", "c", "c"}});
    CHECK(q.digraph == expected);
    CHECK(q.origin_of("e'", false).origin == "e");
    CHECK(q.origin_of("e'", false).rule == "loop");
    check_provenance_covers(q);
  }
  SECTION("loops are unchanged") {
    const auto g = load_graph("loop");
    CHECK(cycle_to_loop(g, {GeometricCycle::canonical(g, {"e"})}).digraph == g);
  }
  SECTION("two-cycle") {
    const auto g = load_graph("two-cycle");
    const auto q = cycle_to_loop(g, {GeometricCycle::canonical(g, {"q", "p"})});
    CHECK(q.digraph.arrow("p'").source == "a");
    CHECK(q.digraph.arrow("p'").target == "a");
    CHECK(q.digraph.arrow("q").source == "b");
    CHECK(q.digraph.vertex_count() == 2);
    CHECK(q.digraph.arrow_count() == 2);
  }
  SECTION("errors") {
    const auto sq3 = load_graph("sq3");
    CHECK(error_of([&] { cycle_to_loop(sq3, {GeometricCycle::canonical(sq3, {"C1"})}); }) == ErrorCode::CycleHasExit);
    const auto two = load_graph("two-cycle");
    const auto c = GeometricCycle::canonical(two, {"p", "q"});
    CHECK(error_of([&] { cycle_to_loop(two, {c, c}); }) == ErrorCode::CyclesNotDisjoint);
  }
}

TEST_CASE("cycle_to_loop preserves counts and sinks over the corpus") {
  for (const auto& g : test::corpus_digraphs()) {
    std::vector<GeometricCycle> free;
    for (const auto& info : enumerate_cycles(g)) {
      if (!info.hasExit) free.push_back(info.cycle);
    }
    const auto q = cycle_to_loop(g, free);
    INFO(g.name());
    CHECK(q.digraph.vertices() == g.vertices());
    CHECK(q.digraph.arrow_count() == g.arrow_count());
    CHECK(sinks(q.digraph) == sinks(g));
    std::size_t free_loops = 0;
    for (const auto& info : enumerate_cycles(q.digraph)) {
      if (!info.hasExit) {
        CHECK(info.cycle.length() == 1);
        ++free_loops;
      }
    }
    CHECK(free_loops == free.size());
    check_provenance_covers(q);
  }
}

TEST_CASE("sever") {
  SECTION("Ek") {
    const auto g = load_graph("ek");
    const auto s = sever(g, load_ideal("ek", g));
    CHECK(s.digraph.same_structure(load_graph("ek-severed")));
    CHECK(s.digraph.vertex_count() == 6);
    CHECK(sinks(s.digraph) == std::vector<std::string>{"v.1", "v.2", "v.3"});
    CHECK(s.origin_of("h.2", false).origin == "h");
    CHECK(s.origin_of("v.3", true).rule == "split");
    check_provenance_covers(s);
  }
  SECTION("single loop by 1 + x^2 gives two isolated vertices") {
    const auto g = load_graph("loop");
    for (const auto& name : {"complex-ideal-F5", "complex-ideal-Q"}) {
      const auto s = sever(g, load_ideal(name, g));
      CHECK(s.digraph.vertices() == std::vector<std::string>{"v.1", "v.2"});
      CHECK(s.digraph.arrow_count() == 0);
    }
  }
  SECTION("D_q^4 by (w, v - e^4)") {
    const auto g = load_graph("dq4");
    const auto s = sever(g, load_ideal("n-ideal-F5", g));
    const auto star = make({"c", "s1", "s2", "s3", "s4"},
                           {{"l", "c", "c"}, {"a", "c", "s1"}, {"b", "c", "s2"}, {"d", "c", "s3"}, {"e", "c", "s4"}});
    CHECK(test::isomorphic(s.digraph, star));
  }
  SECTION("S_q^5 by the ch=2 ideal is S_q^2") {
    const auto g = load_graph("sq5");
    CHECK(test::isomorphic(sever(g, load_ideal("ch2-ideal-F3", g)).digraph, load_graph("sq2")));
  }
  SECTION("graded ideals sever to the graded quotient") {
    const auto g = load_graph("sq2");
    CHECK(sever(g, load_ideal("sq2-w2", g)).digraph == graded_quotient(g, {{"w2"}, {}}).digraph);
  }
  SECTION("split ids avoid collisions") {
    const auto g = make({"v", "v.1"}, {{"e", "v", "v"}});
    IdealPresentation j{"j", Q, {}, {{"C", GeometricCycle{{"e"}, "v"}, Polynomial(Q, {1, 0, -1})}}};
    const auto s = sever(g, j);
    CHECK(s.digraph.vertices() == std::vector<std::string>{"v.1'", "v.2", "v.1"});
  }
  CHECK(error_of([] {
          const auto g = load_graph("sq5");
          sever(g, load_ideal("ch2-exit", g));
        }) == ErrorCode::InvalidIdeal);
}

TEST_CASE("sever depends only on degrees") {
  for (auto [g, j] : stratum_ideals()) {
    auto other = j;
    for (auto& gen : other.generators) {
      // same degree, different coefficients
      auto c = std::vector<FieldValue>(gen.theta.coefficients().begin(), gen.theta.coefficients().end());
      c.back() = c.back() * FieldValue(Q, 7);
      if (c.size() > 2) c[1] = FieldValue(Q, -3);
      gen.theta = Polynomial(Q, c);
    }
    const auto a = sever(g, j), b = sever(g, other);
    CHECK(a.digraph == b.digraph);
    CHECK(a.provenance == b.provenance);
    check_provenance_covers(a);
  }
}

TEST_CASE("decide_lpa_quotient") {
  const auto loop = load_graph("loop");
  SECTION("Complex over Q is not an LPA") {
    const auto v = decide_lpa_quotient(loop, load_ideal("complex-ideal-Q", loop));
    CHECK_FALSE(v.isLPA);
    CHECK_FALSE(v.severed);
    CHECK(v.summary() == "notLPA: cycle C: unfactored degree 2");
  }
  SECTION("Complex over F5") {
    const auto v = decide_lpa_quotient(loop, load_ideal("complex-ideal-F5", loop));
    CHECK(v.isLPA);
    REQUIRE(v.severed);
    CHECK(v.severed->digraph.vertex_count() == 2);
    CHECK(v.severed->digraph.arrow_count() == 0);
  }
  SECTION("ch=2") {
    const auto g = load_graph("sq5");
    const auto f2 = decide_lpa_quotient(g, load_ideal("ch2-ideal-F2", g));
    CHECK(f2.summary() == "notLPA: cycle C2: repeated root 1");
    const auto f3 = decide_lpa_quotient(g, load_ideal("ch2-ideal-F3", g));
    CHECK(f3.isLPA);
    REQUIRE(f3.cycles.size() == 1);
    CHECK(f3.cycles[0].verdict.witness() == "roots 1 2");
  }
  SECTION("field override") {
    const auto v = decide_lpa_quotient(loop, load_ideal("complex-ideal-Q", loop, FieldSpec::prime(13)));
    CHECK(v.isLPA);
    CHECK(v.cycles[0].verdict.witness() == "roots 5 8");
  }
  SECTION("graded ideals always give an LPA") {
    for (const auto& g : test::corpus_digraphs()) {
      if (g.vertex_count() > 8) continue;
      for (const auto& p : enumerate_admissible_pairs(g)) {
        const auto v = decide_lpa_quotient(g, IdealPresentation{"g", Q, p, {}});
        CHECK(v.isLPA);
        REQUIRE(v.severed);
        CHECK(v.severed->digraph == graded_quotient(g, p).digraph);
      }
    }
  }
}

TEST_CASE("iso_certificate") {
  SECTION("Complex over F5") {
    const auto g = load_graph("loop");
    const auto c = iso_certificate(g, load_ideal("complex-ideal-F5", g));
    CHECK(io::serialize_certificate(c) == "v -> 1*v.1 + 1*v.2\nC -> 2*v.1 + 3*v.2\n");
  }
  SECTION("ch=2 over F3") {
    const auto g = load_graph("sq5");
    const auto c = iso_certificate(g, load_ideal("ch2-ideal-F3", g));
    std::map<std::string, std::string> images;
    for (const auto& gi : c.generatorImages) images[gi.generator] = gi.to_string();
    CHECK(images.at("v2") == "v2 -> 1*v2.1 + 1*v2.2");
    CHECK(images.at("C2") == "C2 -> 1*v2.1 + 2*v2.2");
    CHECK(images.at("a1") == "a1 -> 1*a1.1 + 1*a1.2");
    CHECK(images.at("C1") == "C1 -> 1*C1");
  }
  SECTION("graded ideal is identity-style, including primed vertices") {
    const auto g = load_graph("breaking");
    const auto c = iso_certificate(g, load_ideal("breaking-h", g));
    CHECK(io::serialize_certificate(c) == "v -> 1*v\nv' -> 1*v'\nw -> 1*w\ne0 -> 1*e0\n");
  }
  SECTION("each generator of the graded quotient appears once") {
    for (const auto& [gname, iname] : test::corpus_ideals()) {
      const auto g = load_graph(gname);
      const auto j = load_ideal(iname, g);
      if (!decide_lpa_quotient(g, j).isLPA) {
        CHECK(error_of([&] { iso_certificate(g, j); }) == ErrorCode::NotDlf);
        continue;
      }
      const auto quotient = graded_quotient(g, j.pair).digraph;
      std::multiset<std::string> expected(quotient.vertices().begin(), quotient.vertices().end());
      for (const auto& e : quotient.arrows()) expected.insert(e.id);
      for (const auto& gen : j.generators) {
        const auto c = GeometricCycle::canonical(quotient, gen.cycle.arrows);
        expected.erase(expected.find(c.arrows.front()));
        expected.insert(gen.label);
      }
      std::multiset<std::string> got;
      for (const auto& gi : iso_certificate(g, j).generatorImages) got.insert(gi.generator);
      INFO(iname);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("radical_quotient") {
  const auto loop = load_graph("loop");
  SECTION("(1 - x)^2") {
    const auto j = load_ideal("radical", loop);
    const auto r = radical_quotient(loop, j);
    REQUIRE(r.jPrime.generators.size() == 1);
    CHECK(r.jPrime.generators[0].theta == Polynomial(Q, {1, -1}));
    CHECK(r.severed.digraph.vertex_count() == 1);
    CHECK(r.degreeDrops == std::vector<std::pair<std::string, unsigned>>{{"C", 1}});
    CHECK(r.hypothesisHolds);
    CHECK(quotient_dimension(loop, j) == 2);
    CHECK(quotient_dimension(loop, r.jPrime) == 1);
  }
  SECTION("(1 - x)^2 (1 + x)") {
    const auto r = radical_quotient(loop, load_ideal("radical-cubic", loop));
    CHECK(r.jPrime.generators[0].theta == Polynomial(Q, {1, 0, -1}));
    CHECK(r.degreeDrops[0].second == 1);
  }
  SECTION("hypothesis flagged when the squarefree part does not split") {
    IdealPresentation j{"j", Q, {}, {{"C", GeometricCycle{{"e"}, "v"}, power(Polynomial(Q, {1, 0, 1}), 2)}}};
    const auto r = radical_quotient(loop, j);
    CHECK_FALSE(r.hypothesisHolds);
    CHECK(r.jPrime.generators[0].theta == Polynomial(Q, {1, 0, 1}));
    CHECK(r.degreeDrops[0].second == 2);
  }
  SECTION("dlf ideals are fixed") {
    for (const auto& [gname, iname] : test::corpus_ideals()) {
      const auto g = load_graph(gname);
      const auto j = load_ideal(iname, g);
      if (!decide_lpa_quotient(g, j).isLPA) continue;
      const auto r = radical_quotient(g, j);
      CHECK(r.jPrime == j);
      for (const auto& [label, drop] : r.degreeDrops) CHECK(drop == 0);
      CHECK(r.severed.digraph == sever(g, j).digraph);
    }
  }
}

TEST_CASE("quotient_dimension") {
  const auto ek = load_graph("ek");
  CHECK(quotient_dimension(ek, load_ideal("ek", ek)) == 48);
  CHECK(quotient_dimension(load_graph("point"), std::nullopt) == 1);
  CHECK(quotient_dimension(load_graph("path"), std::nullopt) == 4);
  CHECK(quotient_dimension(load_graph("fork"), std::nullopt) == 8);
  const auto tailed = load_graph("ek-tailed");
  CHECK(quotient_dimension(tailed, load_ideal("ek-tailed", tailed)) == 147);
  CHECK(error_of([] { quotient_dimension(load_graph("loop"), std::nullopt); }) == ErrorCode::UnsupportedShape);
  CHECK(error_of([] { quotient_dimension(load_graph("breaking"), std::nullopt); }) == ErrorCode::UnsupportedShape);
  const auto sq3 = load_graph("sq3");
  CHECK(error_of([&] { quotient_dimension(sq3, load_ideal("sq3-roots", sq3)); }) == ErrorCode::UnsupportedShape);
}

TEST_CASE("quotient_dimension agrees with the severed digraph") {
  std::size_t compared = 0;
  auto compare = [&](const Digraph& g, const IdealPresentation& j) {
    std::optional<std::uint64_t> before;
    try {
      before = quotient_dimension(g, j);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedShape);
      return;
    }
    const auto s = sever(g, j).digraph;
    INFO(g.name() << " " << j.name);
    CHECK(quotient_dimension(s, std::nullopt) == *before);
    CHECK(explicit_dimension(s) == *before);
    ++compared;
  };
  for (const auto& [gname, iname] : test::corpus_ideals()) {
    const auto g = load_graph(gname);
    compare(g, load_ideal(iname, g));
  }
  for (const auto& [g, j] : stratum_ideals()) compare(g, j);
  CHECK(compared > 40);
}
