#include "crosswalk/rml.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "crosswalk/iri.hpp"
#include "crosswalk/template.hpp"

namespace crosswalk::rml {

std::string_view to_string(TermType type) {
  switch (type) {
    case TermType::iri: return "iri";
    case TermType::literal: return "literal";
    case TermType::blank: return "blank";
  }
  return "literal";
}

std::string_view to_string(TermMapKind kind) {
  switch (kind) {
    case TermMapKind::constant: return "constant";
    case TermMapKind::reference: return "reference";
    case TermMapKind::template_: return "template";
    case TermMapKind::function: return "function";
  }
  return "constant";
}

TermMap TermMap::constant(std::string value, TermType type) {
  TermMap m;
  m.kind = TermMapKind::constant;
  m.value = std::move(value);
  m.term_type = type;
  return m;
}

TermMap TermMap::reference(std::string column, TermType type) {
  TermMap m;
  m.kind = TermMapKind::reference;
  m.value = std::move(column);
  m.term_type = type;
  return m;
}

TermMap TermMap::templ(std::string pattern, TermType type) {
  TermMap m;
  m.kind = TermMapKind::template_;
  m.value = std::move(pattern);
  m.term_type = type;
  return m;
}

TermMap TermMap::function(std::string name, std::vector<TermMap> args, TermType type) {
  TermMap m;
  m.kind = TermMapKind::function;
  m.value = std::move(name);
  m.args = std::move(args);
  m.term_type = type;
  return m;
}

bool TermMap::operator<(const TermMap& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (value != o.value) return value < o.value;
  if (args != o.args) return std::lexicographical_compare(args.begin(), args.end(), o.args.begin(), o.args.end());
  return std::tie(fallback_reference, term_type, datatype, language) <
         std::tie(o.fallback_reference, o.term_type, o.datatype, o.language);
}

bool PredicateObjectMap::operator<(const PredicateObjectMap& o) const {
  if (!(predicate == o.predicate)) return predicate < o.predicate;
  return object < o.object;
}

void validate(const TermMap& map) {
  if (map.datatype && map.language)
    throw FormatError("term map \"" + map.value + "\" has both a datatype and a language");
  if ((map.datatype || map.language) && map.term_type != TermType::literal)
    throw FormatError("term map \"" + map.value + "\" has a datatype or language but is not a literal");
  if (map.language && !is_language_tag(*map.language))
    throw FormatError("term map \"" + map.value + "\" has a malformed language tag \"" + *map.language + "\"");
  if (map.value.empty() && map.kind != TermMapKind::constant)
    throw FormatError(std::string("empty ") + std::string(to_string(map.kind)) + " term map");
  if (map.kind == TermMapKind::template_) engine::Template::parse(map.value);
  if (map.kind != TermMapKind::function && (!map.args.empty() || map.fallback_reference))
    throw FormatError("only function term maps take arguments");
  for (const auto& a : map.args) validate(a);
}

namespace {

void collect_columns(const TermMap& map, std::vector<std::string>& out) {
  auto add = [&](const std::string& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  switch (map.kind) {
    case TermMapKind::reference:
      add(map.value);
      break;
    case TermMapKind::template_:
      for (const auto& c : engine::Template::parse(map.value).columns()) add(c);
      break;
    case TermMapKind::function:
      for (const auto& a : map.args) collect_columns(a, out);
      break;
    case TermMapKind::constant:
      break;
  }
}

}  // namespace

std::vector<std::string> referenced_columns(const TermMap& map) {
  std::vector<std::string> out;
  collect_columns(map, out);
  return out;
}

const TriplesMap* RmlGraph::find(const std::string& id) const {
  for (const auto& tm : triples_maps)
    if (tm.id == id) return &tm;
  return nullptr;
}

void validate(const RmlGraph& graph) {
  std::set<std::string> ids;
  for (const auto& tm : graph.triples_maps) {
    if (tm.id.empty()) throw FormatError("triples map with empty id");
    if (!ids.insert(tm.id).second) throw FormatError("duplicate triples map \"" + tm.id + "\"");
  }
  for (const auto& tm : graph.triples_maps) {
    if (tm.subject.term.term_type == TermType::literal)
      throw FormatError("triples map \"" + tm.id + "\": subject map cannot produce literals");
    validate(tm.subject.term);
    for (const auto& pom : tm.predicate_object_maps) {
      if (pom.predicate.term_type != TermType::iri)
        throw FormatError("triples map \"" + tm.id + "\": predicate maps must produce IRIs");
      validate(pom.predicate);
      if (auto rom = std::get_if<ReferencingObjectMap>(&pom.object)) {
        if (!ids.count(rom->parent_map)) throw DanglingJoinError(tm.id, rom->parent_map);
      } else {
        validate(std::get<TermMap>(pom.object));
      }
    }
  }
}

namespace {

struct CanonicalMap {
  std::string id;
  std::string source;
  TermMap subject;
  std::vector<std::string> classes;
  std::vector<PredicateObjectMap> poms;
  bool operator==(const CanonicalMap&) const = default;
};

std::vector<CanonicalMap> canonical(const RmlGraph& g) {
  std::vector<CanonicalMap> out;
  for (const auto& tm : g.triples_maps) {
    CanonicalMap c{tm.id, tm.logical_source.source_id, tm.subject.term, tm.subject.classes,
                   tm.predicate_object_maps};
    std::sort(c.classes.begin(), c.classes.end());
    std::sort(c.poms.begin(), c.poms.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace

bool structurally_equal(const RmlGraph& a, const RmlGraph& b) {
  return a.prefixes == b.prefixes && canonical(a) == canonical(b);
}

RmlGraph strip_functions(const RmlGraph& graph) {
  RmlGraph out = graph;
  for (auto& tm : out.triples_maps) {
    std::vector<PredicateObjectMap> kept;
    for (auto& pom : tm.predicate_object_maps) {
      auto* term = std::get_if<TermMap>(&pom.object);
      if (!term || term->kind != TermMapKind::function) {
        kept.push_back(std::move(pom));
        continue;
      }
      if (!term->fallback_reference) continue;
      TermMap plain = TermMap::reference(*term->fallback_reference, TermType::literal);
      plain.datatype = term->datatype;
      plain.language = term->language;
      kept.push_back({std::move(pom.predicate), std::move(plain)});
    }
    tm.predicate_object_maps = std::move(kept);
  }
  return out;
}

}  // namespace crosswalk::rml
