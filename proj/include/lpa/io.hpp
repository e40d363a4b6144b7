#pragma once

// Text formats: digraphs, ideals, morphisms, projective presentations, DOT,
// quotient results with provenance, and certificates.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/digraph.hpp"
#include "lpa/field.hpp"
#include "lpa/graded_quotient.hpp"
#include "lpa/ideals.hpp"
#include "lpa/ktheory.hpp"
#include "lpa/quotients.hpp"

namespace lpa::io {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
};

/// Splits text into non-empty lines of whitespace-separated words, dropping
/// '#' comments. A '#' inside a word (as in `e#0`) is not a comment.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (raw[k] == '#' && (k == 0 || std::isspace(static_cast<unsigned char>(raw[k - 1])))) {
        raw.erase(k);
        break;
      }
    }
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] inline void parse_error(const Line& line, const std::string& message) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line.number) + ": " + message);
}

inline void expect_words(const Line& line, std::size_t lo, std::size_t hi) {
  if (line.words.size() < lo || line.words.size() > hi) {
    parse_error(line, "'" + line.words.front() + "' expects " + std::to_string(lo - 1) +
                          (hi == lo ? "" : "-" + std::to_string(hi - 1)) + " arguments");
  }
}

/// Runs f, turning library errors into parse errors at the given line.
template <class F>
auto at_line(const Line& line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_error(line, e.detail());
  }
}

inline std::uint64_t parse_count(const Line& line, const std::string& word) {
  if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos || word.size() > 18) {
    parse_error(line, "'" + word + "' is not a positive integer");
  }
  const auto n = std::stoull(word);
  if (n == 0) parse_error(line, "multiplicity must be positive");
  return n;
}

/// "C1:" or "C1" followed by ":".
inline std::pair<std::string, std::size_t> labelled(const Line& line) {
  if (line.words.size() < 2) parse_error(line, "missing label");
  auto label = line.words[1];
  std::size_t next = 2;
  if (!label.empty() && label.back() == ':') {
    label.pop_back();
  } else if (next < line.words.size() && line.words[next] == ":") {
    ++next;
  } else {
    parse_error(line, "expected ':' after label");
  }
  if (label.empty()) parse_error(line, "empty label");
  return {label, next};
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------
// Digraphs

inline Digraph parse_digraph(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().words.front() != "digraph") {
    fail(ErrorCode::ParseError, "line 1: expected 'digraph <name>'");
  }
  detail::expect_words(lines.front(), 2, 2);
  const auto name = lines.front().words[1];
  std::vector<std::string> vertices;
  std::vector<ArrowClass> arrows;
  std::set<std::string> vertex_ids, arrow_ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.words.front();
    if (kw == "vertex") {
      detail::expect_words(line, 2, 2);
      if (!vertex_ids.insert(line.words[1]).second) detail::parse_error(line, "duplicate vertex '" + line.words[1] + "'");
      vertices.push_back(line.words[1]);
    } else if (kw == "arrow") {
      detail::expect_words(line, 4, 5);
      ArrowClass a{line.words[1], line.words[2], line.words[3], {}};
      if (!arrow_ids.insert(a.id).second) detail::parse_error(line, "duplicate arrow '" + a.id + "'");
      for (const auto* end : {&a.source, &a.target}) {
        if (!vertex_ids.contains(*end)) detail::parse_error(line, "unknown vertex '" + *end + "'");
      }
      if (line.words.size() == 5) {
        a.multiplicity = line.words[4] == "omega" ? Multiplicity::infinite()
                                                  : Multiplicity::finite(detail::parse_count(line, line.words[4]));
      }
      arrows.push_back(std::move(a));
    } else {
      detail::parse_error(line, "unknown keyword '" + kw + "'");
    }
  }
  return Digraph(name, std::move(vertices), std::move(arrows));
}

inline std::string serialize_digraph(const Digraph& g) {
  std::string s = "digraph " + g.name() + "\n";
  for (const auto& v : g.vertices()) s += "vertex " + v + "\n";
  for (const auto& a : g.arrows()) {
    s += "arrow " + a.id + " " + a.source + " " + a.target;
    if (!(a.multiplicity == Multiplicity::finite(1))) s += " " + a.multiplicity.to_string();
    s += "\n";
  }
  return s;
}

inline std::string dot_quote(const std::string& id) {
  std::string s = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') s += '\\';
    s += c;
  }
  return s + "\"";
}

inline std::string to_dot(const Digraph& g) {
  std::string s = "digraph " + dot_quote(g.name()) + " {\n";
  for (const auto& v : g.vertices()) s += "  " + dot_quote(v) + ";\n";
  for (const auto& a : g.arrows()) {
    std::string label = a.id;
    if (a.multiplicity.omega) label += " (ω)";
    else if (a.multiplicity.count != 1) label += " (" + std::to_string(a.multiplicity.count) + ")";
    s += "  " + dot_quote(a.source) + " -> " + dot_quote(a.target) + " [label=" + dot_quote(label) + "];\n";
  }
  return s + "}\n";
}

inline std::string serialize_quotient(const QuotientResult& q) {
  std::string s = serialize_digraph(q.digraph);
  for (const auto& p : q.provenance) {
    s += "# provenance: " + p.id + " <- " + p.origin + " [" + p.rule + "]\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Ideals

/// Parses an ideal file against its host digraph. `field_override`, when set,
/// replaces the file's field line.
inline IdealPresentation parse_ideal(std::string_view text, const Digraph& g,
                                     const std::optional<FieldSpec>& field_override = std::nullopt) {
  const auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().words.front() != "ideal") {
    fail(ErrorCode::ParseError, "line 1: expected 'ideal <name>'");
  }
  detail::expect_words(lines.front(), 2, 2);
  IdealPresentation j;
  j.name = lines.front().words[1];
  std::optional<FieldSpec> field;
  std::vector<std::pair<std::string, std::vector<std::string>>> cycles;
  std::map<std::string, std::pair<const detail::Line*, std::vector<std::string>>> polys;
  bool seen_h = false, seen_s = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.words.front();
    if (kw == "field") {
      detail::expect_words(line, 2, 2);
      if (field) detail::parse_error(line, "duplicate field line");
      field = detail::at_line(line, [&] { return FieldSpec::parse(line.words[1]); });
    } else if (kw == "H" || kw == "S") {
      auto& seen = kw == "H" ? seen_h : seen_s;
      if (seen) detail::parse_error(line, "duplicate " + kw + " line");
      seen = true;
      auto& set = kw == "H" ? j.pair.H : j.pair.S;
      for (std::size_t k = 1; k < line.words.size(); ++k) {
        if (!g.has_vertex(line.words[k])) detail::parse_error(line, "unknown vertex '" + line.words[k] + "'");
        set.insert(line.words[k]);
      }
    } else if (kw == "cycle") {
      auto [label, next] = detail::labelled(line);
      std::vector<std::string> arrows(line.words.begin() + static_cast<long>(next), line.words.end());
      if (arrows.empty()) detail::parse_error(line, "cycle " + label + " has no arrows");
      for (const auto& e : arrows) {
        if (!g.has_arrow(e)) detail::parse_error(line, "unknown arrow '" + e + "'");
      }
      for (const auto& c : cycles) {
        if (c.first == label) detail::parse_error(line, "duplicate cycle " + label);
      }
      cycles.emplace_back(label, std::move(arrows));
    } else if (kw == "poly") {
      auto [label, next] = detail::labelled(line);
      std::vector<std::string> coeffs(line.words.begin() + static_cast<long>(next), line.words.end());
      if (coeffs.empty()) detail::parse_error(line, "poly " + label + " has no coefficients");
      if (!polys.emplace(label, std::make_pair(&line, std::move(coeffs))).second) {
        detail::parse_error(line, "duplicate poly " + label);
      }
    } else {
      detail::parse_error(line, "unknown keyword '" + kw + "'");
    }
  }
  if (field_override) field = field_override;
  if (!field) fail(ErrorCode::ParseError, "missing 'field' line");
  j.field = *field;
  for (const auto& [label, arrows] : cycles) {
    auto it = polys.find(label);
    if (it == polys.end()) fail(ErrorCode::ParseError, "cycle " + label + " has no poly line");
    const auto& [line, words] = it->second;
    std::vector<FieldValue> coeffs;
    for (const auto& w : words) {
      coeffs.push_back(detail::at_line(*line, [&] { return FieldValue::parse(j.field, w); }));
    }
    CycleGenerator gen{label, {arrows, ""}, Polynomial(j.field, coeffs)};
    if (!arrows.empty() && g.has_arrow(arrows.front())) gen.cycle.base = g.arrow(arrows.front()).source;
    j.generators.push_back(std::move(gen));
    polys.erase(it);
  }
  if (!polys.empty()) fail(ErrorCode::ParseError, "poly " + polys.begin()->first + " has no cycle line");
  return j;
}

inline std::string serialize_ideal(const IdealPresentation& j, const Digraph& g) {
  std::string s = "ideal " + j.name + "\nfield " + j.field.to_string() + "\n";
  auto set_line = [&](const char* kw, const VertexSet& set) {
    std::string line = kw;
    for (const auto& v : g.ordered(set)) line += " " + v;
    return line + "\n";
  };
  s += set_line("H", j.pair.H);
  s += set_line("S", j.pair.S);
  for (const auto& gen : j.generators) {
    s += "cycle " + gen.label + ":";
    for (const auto& e : gen.cycle.arrows) s += " " + e;
    s += "\npoly " + gen.label + ": " + gen.theta.to_string() + "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Morphisms

struct MorphismFile {
  DigraphMorphism morphism;
  std::string source;
  std::string target;
};

inline MorphismFile parse_morphism(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().words.front() != "morphism") {
    fail(ErrorCode::ParseError, "line 1: expected 'morphism <name>'");
  }
  detail::expect_words(lines.front(), 2, 2);
  MorphismFile out;
  out.morphism.name = lines.front().words[1];
  bool graphs = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.words.front();
    if (kw == "graphs") {
      detail::expect_words(line, 3, 3);
      if (graphs) detail::parse_error(line, "duplicate graphs line");
      graphs = true;
      out.source = line.words[1];
      out.target = line.words[2];
    } else if (kw == "v" || kw == "e") {
      detail::expect_words(line, 4, 4);
      if (line.words[2] != "->") detail::parse_error(line, "expected '->'");
      auto& map = kw == "v" ? out.morphism.vertexMap : out.morphism.arrowMap;
      if (!map.emplace(line.words[1], line.words[3]).second) {
        detail::parse_error(line, "'" + line.words[1] + "' is mapped twice");
      }
    } else {
      detail::parse_error(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!graphs) fail(ErrorCode::ParseError, "missing 'graphs' line");
  return out;
}

inline std::string serialize_morphism(const MorphismFile& m) {
  std::string s = "morphism " + m.morphism.name + "\ngraphs " + m.source + " " + m.target + "\n";
  for (const auto& [a, b] : m.morphism.vertexMap) s += "v " + a + " -> " + b + "\n";
  for (const auto& [a, b] : m.morphism.arrowMap) s += "e " + a + " -> " + b + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Projective presentations

/// `P: v1 v1 w` lines and `corner v {e1#0, e1#2}` lines.
inline ProjectivePresentation parse_projective(std::string_view text) {
  ProjectivePresentation p;
  for (const auto& line : detail::tokenize(text)) {
    const auto& kw = line.words.front();
    if (kw == "P:" || kw == "P") {
      std::size_t k = 1;
      if (kw == "P") {
        if (line.words.size() < 2 || line.words[1] != ":") detail::parse_error(line, "expected 'P:'");
        k = 2;
      }
      for (; k < line.words.size(); ++k) p.items.push_back({line.words[k], std::nullopt});
    } else if (kw == "corner") {
      if (line.words.size() < 3) detail::parse_error(line, "expected 'corner <v> {...}'");
      std::string rest;
      for (std::size_t k = 2; k < line.words.size(); ++k) rest += line.words[k];
      if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}') detail::parse_error(line, "expected braces");
      rest = rest.substr(1, rest.size() - 2);
      std::set<ArrowInstance> z;
      std::istringstream parts(rest);
      for (std::string item; std::getline(parts, item, ',');) {
        const auto hash = item.find('#');
        if (hash == std::string::npos || hash == 0) detail::parse_error(line, "expected <arrow>#<index>, got '" + item + "'");
        const auto index = item.substr(hash + 1);
        if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos || index.size() > 18) {
          detail::parse_error(line, "bad instance index '" + index + "'");
        }
        z.insert({item.substr(0, hash), std::stoull(index)});
      }
      p.items.push_back({line.words[1], std::move(z)});
    } else {
      detail::parse_error(line, "unknown keyword '" + kw + "'");
    }
  }
  return p;
}

inline std::string serialize_projective(const ProjectivePresentation& p) {
  std::string s, vertices;
  for (const auto& item : p.items) {
    if (!item.is_corner()) vertices += " " + item.vertex;
  }
  if (!vertices.empty()) s += "P:" + vertices + "\n";
  for (const auto& item : p.items) {
    if (!item.is_corner()) continue;
    s += "corner " + item.vertex + " {";
    bool first = true;
    for (const auto& inst : *item.corner) {
      s += (first ? "" : ", ") + inst.arrow + "#" + std::to_string(inst.index);
      first = false;
    }
    s += "}\n";
  }
  return s;
}

inline std::string serialize_certificate(const IsoCertificate& c) {
  std::string s;
  for (const auto& g : c.generatorImages) s += g.to_string() + "\n";
  return s;
}

}  // namespace lpa::io
