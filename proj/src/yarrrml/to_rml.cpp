#include "crosswalk/iri.hpp"
#include "crosswalk/template.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::yarrrml {

namespace {

// "$(a) and {b}" -> "{a} and \{b\}"
std::string to_rml_template(std::string_view yarrrml) {
  std::string out;
  std::size_t pos = 0;
  while (pos < yarrrml.size()) {
    auto open = yarrrml.find("$(", pos);
    if (open == std::string_view::npos) {
      out += engine::escape_template_literal(yarrrml.substr(pos));
      break;
    }
    out += engine::escape_template_literal(yarrrml.substr(pos, open - pos));
    auto close = yarrrml.find(')', open + 2);
    out += "{" + engine::escape_template_literal(yarrrml.substr(open + 2, close - open - 2)) + "}";
    pos = close + 1;
  }
  return out;
}

class Translator {
 public:
  explicit Translator(const YarrrmlDocument& doc) : doc_(doc) {}

  rml::RmlGraph run() {
    rml::RmlGraph g;
    const auto& reserved = reserved_turtle_prefixes();
    for (const auto& [label, iri] : doc_.prefixes)
      if (!reserved.count(label)) g.prefixes.emplace(label, iri);
    for (const auto& [id, m] : doc_.mappings) g.triples_maps.push_back(translate(id, m));
    return g;
  }

 private:
  std::string iri(const std::string& text) const { return expand_curie(text, doc_.prefixes); }

  rml::TermMap term(const TermSpec& t) const {
    rml::TermMap m;
    m.term_type = t.term_type;
    switch (t.kind) {
      case TermKind::constant:
        m.kind = rml::TermMapKind::constant;
        m.value = t.term_type == TermType::iri ? iri(t.value) : t.value;
        break;
      case TermKind::reference:
        m.kind = rml::TermMapKind::reference;
        m.value = t.value;
        break;
      case TermKind::template_: {
        m.kind = rml::TermMapKind::template_;
        std::string pattern = t.value;
        if (t.term_type == TermType::iri) {
          auto head = pattern.substr(0, pattern.find("$("));
          if (head.find(':') != std::string::npos) pattern = iri(pattern);
        }
        m.value = to_rml_template(pattern);
        break;
      }
      case TermKind::function_call: {
        m.kind = rml::TermMapKind::function;
        m.value = t.value.find(':') != std::string::npos ? iri(t.value) : t.value;
        for (const auto& a : t.args) {
          m.args.push_back(term(a));
          if (!m.fallback_reference && a.kind == TermKind::reference) m.fallback_reference = a.value;
        }
        break;
      }
    }
    if (t.datatype) m.datatype = iri(*t.datatype);
    m.language = t.language;
    return m;
  }

  rml::TriplesMap translate(const std::string& id, const YarrrmlMapping& m) const {
    rml::TriplesMap tm;
    tm.id = id;
    tm.logical_source.source_id = m.sources.empty() ? std::string() : m.sources.front().access;
    tm.subject.term = term(m.subject);
    for (const auto& cls : m.classes) tm.subject.classes.push_back(iri(cls));
    for (const auto& entry : m.po) {
      rml::PredicateObjectMap pom;
      pom.predicate = rml::TermMap::constant(entry.predicate == "a" ? std::string(rdf_type) : iri(entry.predicate),
                                             TermType::iri);
      if (const auto* t = std::get_if<TermSpec>(&entry.object)) {
        pom.object = term(*t);
      } else {
        const auto& join = std::get<JoinSpec>(entry.object);
        if (!doc_.mappings.count(join.parent_mapping)) throw DanglingJoinError(id, join.parent_mapping);
        pom.object = rml::ReferencingObjectMap{join.parent_mapping, join.conditions};
      }
      tm.predicate_object_maps.push_back(std::move(pom));
    }
    return tm;
  }

  const YarrrmlDocument& doc_;
};

}  // namespace

rml::RmlGraph to_rml(const YarrrmlDocument& doc) { return Translator(doc).run(); }

}  // namespace crosswalk::yarrrml
