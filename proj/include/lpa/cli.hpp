#pragma once

// Command-line front end. `run` is what the lpa executable calls; tests call
// it directly with captured streams.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpa/lpa.hpp"

namespace lpa::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Text, Dot, JsonLines };

struct Limits {
  std::size_t maxCycles = 10'000;
  std::size_t maxPairs = 10'000;
  std::uint64_t maxParamPoints = 1'000'000;
  unsigned congruenceDepth = 12;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputPaths;
  std::optional<FieldSpec> field;
  Limits limits;
  OutputFormat outputFormat = OutputFormat::Text;
  // command options
  std::vector<std::string> set;
  unsigned maxDeg = 0;
  bool forceDegreeOnly = false;
};

enum ExitCode : int { Ok = 0, ParseFailure = 2, ValidationFailure = 3, ResourceFailure = 4, InternalFailure = 5 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return ParseFailure;
    case ErrorCode::ResourceLimit: return ResourceFailure;
    case ErrorCode::MeetJoinFailure: return InternalFailure;
    default: return ValidationFailure;
  }
}

/// Applies "key=value,key=value" overrides, as found in LPA_LIMITS.
inline void apply_limit_overrides(Limits& limits, const std::string& spec) {
  std::istringstream in(spec);
  for (std::string pair; std::getline(in, pair, ',');) {
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    if (eq == std::string::npos) fail(ErrorCode::ParseError, "LPA_LIMITS: expected key=value, got '" + pair + "'");
    const auto key = pair.substr(0, eq);
    const auto value = pair.substr(eq + 1);
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 18) {
      fail(ErrorCode::ParseError, "LPA_LIMITS: '" + value + "' is not a positive integer");
    }
    const auto n = std::stoull(value);
    if (n == 0) fail(ErrorCode::ParseError, "LPA_LIMITS: " + key + " must be positive");
    if (key == "maxCycles") limits.maxCycles = n;
    else if (key == "maxPairs") limits.maxPairs = n;
    else if (key == "maxParamPoints") limits.maxParamPoints = n;
    else if (key == "congruenceDepth") limits.congruenceDepth = static_cast<unsigned>(n);
    else fail(ErrorCode::ParseError, "LPA_LIMITS: unknown key '" + key + "'");
  }
}

/// Text lines paired with their json-lines records.
class Report {
 public:
  void add(std::string text, Json record) {
    text_ += text;
    if (text.empty() || text.back() != '\n') text_ += '\n';
    records_.push_back(std::move(record));
  }
  void raw(std::string text, Json record) {
    text_ += std::move(text);
    records_.push_back(std::move(record));
  }
  std::string render(OutputFormat f) const {
    if (f != OutputFormat::JsonLines) return text_;
    std::string s;
    for (const auto& r : records_) s += r.dump() + "\n";
    return s;
  }

 private:
  std::string text_;
  std::vector<Json> records_;
};

namespace detail {

inline std::string braces(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + items[i];
  return s + "}";
}

inline std::string pair_text(const Digraph& g, const AdmissiblePair& p) {
  return "H=" + braces(g.ordered(p.H)) + " S=" + braces(g.ordered(p.S));
}

inline Json pair_json(const Digraph& g, const AdmissiblePair& p) {
  return Json{{"H", g.ordered(p.H)}, {"S", g.ordered(p.S)}};
}

/// Emits a digraph or quotient either as a file, DOT, or json records.
inline void emit_quotient(Report& r, const QuotientResult& q, OutputFormat f) {
  if (f == OutputFormat::Dot) {
    r.raw(io::to_dot(q.digraph), Json::object());
    return;
  }
  Json vertices = Json::array(), arrows = Json::array(), prov = Json::array();
  for (const auto& v : q.digraph.vertices()) vertices.push_back(v);
  for (const auto& a : q.digraph.arrows()) {
    arrows.push_back(Json{{"id", a.id}, {"source", a.source}, {"target", a.target},
                          {"multiplicity", a.multiplicity.to_string()}});
  }
  for (const auto& p : q.provenance) {
    prov.push_back(Json{{"id", p.id}, {"vertex", p.vertex}, {"origin", p.origin}, {"rule", p.rule}});
  }
  r.raw(io::serialize_quotient(q), Json{{"type", "digraph"},
                                         {"name", q.digraph.name()},
                                         {"vertices", vertices},
                                         {"arrows", arrows},
                                         {"provenance", prov}});
}

struct Inputs {
  const RunConfig& config;

  const std::string& path(std::size_t i) const {
    if (i >= config.inputPaths.size()) {
      fail(ErrorCode::ParseError, "'" + config.command + "' needs " + std::to_string(i + 1) + " input file(s)");
    }
    return config.inputPaths[i];
  }
  Digraph digraph(std::size_t i) const { return io::parse_digraph(io::read_file(path(i))); }
  IdealPresentation ideal(std::size_t i, const Digraph& g) const {
    return io::parse_ideal(io::read_file(path(i)), g, config.field);
  }
  ProjectivePresentation projective(std::size_t i) const { return io::parse_projective(io::read_file(path(i))); }
  void at_most(std::size_t n) const {
    if (config.inputPaths.size() > n) fail(ErrorCode::ParseError, "'" + config.command + "' takes at most " +
                                                                       std::to_string(n) + " input file(s)");
  }
};

inline std::string vertex_flags(const VertexReport& v) {
  std::vector<std::string> f;
  if (v.sink) f.push_back("sink");
  if (v.source) f.push_back("source");
  if (v.branchVertex) f.push_back("branch");
  if (v.infiniteEmitter) f.push_back("infinite-emitter");
  if (v.regular) f.push_back("regular");
  if (v.linePoint) f.push_back("line-point");
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : " ") + x;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline Report cmd_analyze(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  Report r;
  r.add("digraph " + g.name() + ": " + std::to_string(g.vertex_count()) + " vertices, " +
            std::to_string(g.arrow_count()) + " arrows",
        Json{{"type", "digraph"}, {"name", g.name()}, {"vertices", g.vertex_count()}, {"arrows", g.arrow_count()}});
  for (const auto& v : classify_vertices(g)) {
    r.add("vertex " + v.id + ": " + detail::vertex_flags(v),
          Json{{"type", "vertex"}, {"id", v.id}, {"sink", v.sink}, {"source", v.source},
               {"branchVertex", v.branchVertex}, {"infiniteEmitter", v.infiniteEmitter}, {"regular", v.regular},
               {"linePoint", v.linePoint}, {"leak", v.leak}});
  }
  for (const auto& info : enumerate_cycles(g, c.limits.maxCycles)) {
    r.add("cycle " + info.cycle.to_string() + ": " + (info.hasExit ? "exit" : "no-exit") +
              (info.exclusive ? " exclusive" : " shared") + (info.multiplicityOne ? " simple" : " multiple"),
          Json{{"type", "cycle"}, {"arrows", info.cycle.arrows}, {"base", info.cycle.base},
               {"hasExit", info.hasExit}, {"exclusive", info.exclusive}, {"multiplicityOne", info.multiplicityOne}});
  }
  for (const auto& h : enumerate_hereditary_saturated(g, c.limits.maxPairs)) {
    r.add("hereditary-saturated " + detail::braces(g.ordered(h)),
          Json{{"type", "hereditarySaturated"}, {"set", g.ordered(h)}});
  }
  return r;
}

inline Report cmd_closure(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  const VertexSet x(c.set.begin(), c.set.end());
  const auto h = hereditary_saturated_closure(g, x);
  Report r;
  r.add(detail::braces(g.ordered(h)), Json{{"type", "closure"}, {"input", g.ordered(x)}, {"closure", g.ordered(h)}});
  return r;
}

inline Report cmd_quotient(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto j = in.ideal(1, g);
  Report r;
  detail::emit_quotient(r, graded_quotient(g, j.pair), c.outputFormat);
  return r;
}

inline Report cmd_decide(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto j = in.ideal(1, g);
  const auto v = decide_lpa_quotient(g, j);
  Report r;
  Json cycles = Json::array();
  for (const auto& cy : v.cycles) cycles.push_back(Json{{"cycle", cy.label}, {"dlf", cy.verdict.dlf}, {"witness", cy.verdict.witness()}});
  r.add(v.summary(), Json{{"type", "verdict"}, {"isLPA", v.isLPA}, {"cycles", cycles}});
  for (const auto& cy : v.cycles) {
    r.add("cycle " + cy.label + ": " + (cy.verdict.dlf ? "dlf, " : "not dlf, ") + cy.verdict.witness(),
          Json{{"type", "cycle"}, {"cycle", cy.label}, {"dlf", cy.verdict.dlf}, {"witness", cy.verdict.witness()}});
  }
  return r;
}

inline Report cmd_sever(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto j = in.ideal(1, g);
  if (!c.forceDegreeOnly) {
    const auto v = decide_lpa_quotient(g, j);
    if (!v.isLPA) fail(ErrorCode::NotDlf, v.summary() + " (use --force-degree-only)");
  }
  Report r;
  detail::emit_quotient(r, sever(g, j), c.outputFormat);
  return r;
}

inline Report cmd_certificate(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto j = in.ideal(1, g);
  Report r;
  for (const auto& img : iso_certificate(g, j).generatorImages) {
    Json terms = Json::array();
    for (const auto& t : img.image) terms.push_back(Json{{"coefficient", t.coefficient.to_string()}, {"id", t.id}});
    r.add(img.to_string(), Json{{"type", "image"}, {"generator", img.generator}, {"image", terms}});
  }
  return r;
}

inline Report cmd_radical(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto j = in.ideal(1, g);
  const auto rad = radical_quotient(g, j);
  Report r;
  r.raw(io::serialize_ideal(rad.jPrime, g), Json{{"type", "ideal"}, {"text", io::serialize_ideal(rad.jPrime, g)}});
  for (const auto& [label, drop] : rad.degreeDrops) {
    r.add("# drop " + label + ": " + std::to_string(drop), Json{{"type", "drop"}, {"cycle", label}, {"drop", drop}});
  }
  r.add(std::string("# hypothesis ") + (rad.hypothesisHolds ? "holds" : "violated"),
        Json{{"type", "hypothesis"}, {"holds", rad.hypothesisHolds}});
  detail::emit_quotient(r, rad.severed, c.outputFormat == OutputFormat::Dot ? OutputFormat::Text : c.outputFormat);
  return r;
}

inline Report cmd_dim(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  Report r;
  if (c.inputPaths.size() == 2) {
    const auto j = in.ideal(1, g);
    const auto d = quotient_dimension(g, j, c.limits.maxCycles);
    r.add(std::to_string(d), Json{{"type", "dimension"}, {"dimension", d}});
    return r;
  }
  const auto m = acyclic_decomposition(g);
  Json blocks = Json::array();
  for (const auto& [n, k] : m.blocks) blocks.push_back(Json{{"size", n}, {"copies", k}});
  r.add(m.to_string(), Json{{"type", "dimension"}, {"dimension", m.dimension()}, {"blocks", blocks}});
  return r;
}

inline Report cmd_monoid(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  const auto p = monoid_presentation(g);
  Report r;
  r.add("generators " + detail::braces(p.generators), Json{{"type", "generators"}, {"generators", p.generators}});
  for (const auto& rel : p.relations) {
    Json targets = Json::object();
    for (const auto& [v, n] : rel.targets.counts()) targets[v] = n;
    r.add("[" + rel.vertex + "] = " + rel.targets.to_string(),
          Json{{"type", "relation"}, {"vertex", rel.vertex}, {"targets", targets}});
  }
  return r;
}

inline Report cmd_strata(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  if (!c.field) fail(ErrorCode::ParseError, "strata needs --field F<p>");
  if (c.maxDeg == 0) fail(ErrorCode::ParseError, "strata needs --max-deg");
  StrataLimits limits;
  limits.maxPairs = c.limits.maxPairs;
  limits.maxCycles = c.limits.maxCycles;
  limits.maxParamPoints = c.limits.maxParamPoints;
  Report r;
  for (const auto& s : enumerate_strata(g, *c.field, c.maxDeg, limits)) {
    std::vector<std::string> beta;
    for (std::size_t i = 0; i < s.key.beta.size(); ++i) {
      beta.push_back("(" + s.key.beta[i].to_string() + ")^" + std::to_string(s.key.degrees[i]));
    }
    Json cycles = Json::array();
    for (std::size_t i = 0; i < s.key.beta.size(); ++i) {
      cycles.push_back(Json{{"arrows", s.key.beta[i].arrows}, {"degree", s.key.degrees[i]}});
    }
    r.add("stratum " + detail::pair_text(g, s.key.pair) + " beta=" + detail::braces(beta) + ": " +
              s.dlfCount.str() + "/" + s.parameterCount.str() + " dlf",
          Json{{"type", "stratum"}, {"pair", detail::pair_json(g, s.key.pair)}, {"beta", cycles},
               {"parameters", s.parameterCount.str()}, {"dlf", s.dlfCount.str()}});
  }
  return r;
}

inline Report cmd_lattice(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  const auto lat = pair_lattice(g, c.limits.maxPairs);
  Report r;
  for (std::size_t i = 0; i < lat.elements.size(); ++i) {
    r.add("pair " + std::to_string(i) + ": " + detail::pair_text(g, lat.elements[i]),
          Json{{"type", "pair"}, {"index", i}, {"pair", detail::pair_json(g, lat.elements[i])}});
  }
  for (std::size_t a = 0; a < lat.elements.size(); ++a) {
    for (std::size_t b = a + 1; b < lat.elements.size(); ++b) {
      r.add("meet " + std::to_string(a) + " " + std::to_string(b) + " = " + std::to_string(lat.meet[a][b]) +
                ", join = " + std::to_string(lat.join[a][b]),
            Json{{"type", "bounds"}, {"a", a}, {"b", b}, {"meet", lat.meet[a][b]}, {"join", lat.join[a][b]}});
    }
  }
  return r;
}

inline Report cmd_orth(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(3);
  const auto g = in.digraph(0);
  const auto p = in.projective(1);
  const auto j = in.ideal(2, g);
  const bool o = is_orthogonal(g, p, j);
  Report r;
  r.add(o ? "orthogonal" : "not orthogonal", Json{{"type", "orthogonality"}, {"orthogonal", o}});
  return r;
}

inline Report cmd_fgip(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  Report r;
  for (const auto& f : classify_fgips(g, c.limits.maxCycles)) {
    r.add("fgip " + f.cycle.to_string() + ": support " + detail::braces(f.support),
          Json{{"type", "fgip"}, {"cycle", f.cycle.arrows}, {"support", f.support}});
  }
  return r;
}

inline Report cmd_simples(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  Report r;
  for (const auto& s : classify_simple_projectives(g)) {
    r.add("simple " + s.representative + ": members " + detail::braces(s.members),
          Json{{"type", "simple"}, {"representative", s.representative}, {"members", s.members}});
  }
  return r;
}

inline Report cmd_end(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(2);
  const auto g = in.digraph(0);
  const auto p = in.projective(1);
  const auto v = end_finite_dim(g, p);
  Report r;
  if (v.finite) {
    r.add("finite: " + v.decomposition.to_string(),
          Json{{"type", "endomorphisms"}, {"finite", true}, {"dimension", v.decomposition.dimension()}});
  } else {
    r.add("infinite: " + v.witness, Json{{"type", "endomorphisms"}, {"finite", false}, {"witness", v.witness}});
  }
  return r;
}

inline Report cmd_check_morphism(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(3);
  const auto m = io::parse_morphism(io::read_file(in.path(0)));
  const auto src = in.digraph(1);
  const auto dst = in.digraph(2);
  if (m.source != src.name() || m.target != dst.name()) {
    fail(ErrorCode::MalformedMorphism, "morphism is declared between '" + m.source + "' and '" + m.target + "'");
  }
  const auto v = check_admissible_morphism(src, dst, m.morphism);
  Report r;
  r.add(v.valid ? "valid" : "invalid", Json{{"type", "morphism"}, {"valid", v.valid}, {"fibersFinite", v.fibersFinite}});
  for (const auto& why : v.violations) r.add("violation " + why, Json{{"type", "violation"}, {"detail", why}});
  return r;
}

inline Report cmd_dot(const RunConfig& c) {
  detail::Inputs in{c};
  in.at_most(1);
  const auto g = in.digraph(0);
  Report r;
  r.raw(io::to_dot(g), Json{{"type", "dot"}, {"text", io::to_dot(g)}});
  return r;
}

inline const std::map<std::string, std::function<Report(const RunConfig&)>>& commands() {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> table = {
      {"analyze", cmd_analyze},   {"closure", cmd_closure},       {"quotient", cmd_quotient},
      {"decide", cmd_decide},     {"sever", cmd_sever},           {"certificate", cmd_certificate},
      {"radical", cmd_radical},   {"dim", cmd_dim},               {"monoid", cmd_monoid},
      {"strata", cmd_strata},     {"lattice", cmd_lattice},       {"orth", cmd_orth},
      {"fgip", cmd_fgip},         {"simples", cmd_simples},       {"end", cmd_end},
      {"check-morphism", cmd_check_morphism}, {"dot", cmd_dot},
  };
  return table;
}

inline std::string usage() {
  std::string s = "usage: lpa <command> [options] <files...>\ncommands:";
  for (const auto& [name, f] : commands()) s += " " + name;
  return s + "\n";
}

/// Parses arguments (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const char* limits_env = std::getenv("LPA_LIMITS")) {
  CLI::App app{"Leavitt path algebra toolkit", "lpa"};
  app.set_help_flag("");
  RunConfig config;
  std::string field, format = "text", set;
  app.add_option("command", config.command)->required();
  app.add_option("files", config.inputPaths);
  app.add_option("--field", field);
  app.add_option("--format", format);
  app.add_option("--set", set);
  app.add_option("--max-deg", config.maxDeg);
  app.add_flag("--force-degree-only", config.forceDegreeOnly);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage();
    return ParseFailure;
  }

  try {
    if (limits_env) apply_limit_overrides(config.limits, limits_env);
    if (!field.empty()) {
      try {
        config.field = FieldSpec::parse(field);
      } catch (const Error& e) {
        fail(ErrorCode::ParseError, "--field: " + e.detail());
      }
    }
    if (format == "text") config.outputFormat = OutputFormat::Text;
    else if (format == "dot") config.outputFormat = OutputFormat::Dot;
    else if (format == "json-lines") config.outputFormat = OutputFormat::JsonLines;
    else fail(ErrorCode::ParseError, "--format must be text, dot or json-lines");
    std::istringstream items(set);
    for (std::string w; items >> w;) {
      std::istringstream parts(w);
      for (std::string v; std::getline(parts, v, ',');) {
        if (!v.empty()) config.set.push_back(v);
      }
    }
    const auto it = commands().find(config.command);
    if (it == commands().end()) {
      fail(ErrorCode::ParseError, "unknown command '" + config.command + "'");
    }
    out << it->second(config).render(config.outputFormat);
    return Ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return InternalFailure;
  }
}

}  // namespace lpa::cli
