#include <algorithm>
#include <cstdio>
#include <memory>
#include <regex>
#include <sstream>

#include "crosswalk/iri.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::yarrrml {

const std::map<std::string, std::string>& reserved_turtle_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"rr", std::string(ns::rr)},     {"rml", std::string(ns::rml)}, {"ql", std::string(ns::ql)},
      {"fnml", std::string(ns::fnml)}, {"fno", std::string(ns::fno)}, {"crosswalkfn", std::string(ns::function_ns)}};
  return prefixes;
}

namespace {

std::string turtle_string(std::string_view text) {
  std::string out = "\"";
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  return out + "\"";
}

// A blank node rendered as a nested [ ... ] block.
struct Block {
  struct Entry {
    std::string predicate;
    std::string object;                 // used when nested is null
    std::shared_ptr<Block> nested;
  };
  std::vector<Entry> entries;

  void add(std::string p, std::string o) { entries.push_back({std::move(p), std::move(o), nullptr}); }
  Block& add_block(std::string p) {
    entries.push_back({std::move(p), {}, std::make_shared<Block>()});
    return *entries.back().nested;
  }
};

void render(std::ostringstream& out, const Block& block, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    const auto& e = block.entries[i];
    out << pad << e.predicate << " ";
    if (e.nested) {
      out << "[\n";
      render(out, *e.nested, depth + 1);
      out << pad << "]";
    } else {
      out << e.object;
    }
    out << (i + 1 < block.entries.size() ? " ;\n" : "\n");
  }
}

class Writer {
 public:
  explicit Writer(const rml::RmlGraph& g) : graph_(g) {
    namespaces_ = reserved_turtle_prefixes();
    for (const auto& [label, iri] : g.prefixes)
      if (!namespaces_.count(label)) namespaces_.emplace(label, iri);
  }

  std::string run() {
    std::ostringstream out;
    for (const auto& [label, iri] : reserved_turtle_prefixes()) out << "@prefix " << label << ": <" << iri << "> .\n";
    for (const auto& [label, iri] : graph_.prefixes)
      if (!reserved_turtle_prefixes().count(label)) out << "@prefix " << label << ": <" << iri << "> .\n";

    std::vector<const rml::TriplesMap*> maps;
    for (const auto& tm : graph_.triples_maps) maps.push_back(&tm);
    std::sort(maps.begin(), maps.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* tm : maps) {
      out << "\n" << map_ref(tm->id) << " a rr:TriplesMap ;\n";
      Block body;
      auto& ls = body.add_block("rml:logicalSource");
      ls.add("rml:source", turtle_string(tm->logical_source.source_id));
      ls.add("rml:referenceFormulation", "ql:CSV");
      auto& sm = body.add_block("rr:subjectMap");
      term_map(sm, tm->subject.term, Position::subject);
      for (const auto& cls : tm->subject.classes) sm.add("rr:class", iri(cls));
      for (const auto& pom : tm->predicate_object_maps) {
        auto& pb = body.add_block("rr:predicateObjectMap");
        if (pom.predicate.kind == rml::TermMapKind::constant)
          pb.add("rr:predicate", iri(pom.predicate.value));
        else
          term_map(pb.add_block("rr:predicateMap"), pom.predicate, Position::predicate);
        auto& ob = pb.add_block("rr:objectMap");
        if (const auto* t = std::get_if<rml::TermMap>(&pom.object)) {
          term_map(ob, *t, Position::object);
        } else {
          const auto& rom = std::get<rml::ReferencingObjectMap>(pom.object);
          ob.add("rr:parentTriplesMap", map_ref(rom.parent_map));
          for (const auto& j : rom.joins) {
            auto& jc = ob.add_block("rr:joinCondition");
            jc.add("rr:child", turtle_string(j.child));
            jc.add("rr:parent", turtle_string(j.parent));
          }
        }
      }
      std::ostringstream body_text;
      render(body_text, body, 1);
      std::string text = body_text.str();
      // Close the statement: replace the final newline with " .\n".
      text.pop_back();
      out << text << " .\n";
    }
    return out.str();
  }

 private:
  enum class Position { subject, predicate, object, argument };

  static bool safe_local(std::string_view local) {
    static const std::regex pattern(R"(^([A-Za-z0-9_]([A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?$)");
    return std::regex_match(local.begin(), local.end(), pattern);
  }

  std::string iri(const std::string& value) const {
    const std::string* best_label = nullptr;
    std::size_t best_len = 0;
    for (const auto& [label, ns_iri] : namespaces_) {
      if (ns_iri.size() > best_len && value.compare(0, ns_iri.size(), ns_iri) == 0 &&
          safe_local(std::string_view(value).substr(ns_iri.size()))) {
        best_label = &label;
        best_len = ns_iri.size();
      }
    }
    if (best_label) return *best_label + ":" + value.substr(best_len);
    return "<" + value + ">";
  }

  static std::string map_ref(const std::string& id) {
    if (is_absolute_iri(id)) return "<" + id + ">";
    return "<#" + percent_encode(id) + ">";
  }

  std::string literal(const rml::TermMap& t) const {
    auto s = turtle_string(t.value);
    if (t.language) return s + "@" + *t.language;
    if (t.datatype) return s + "^^" + iri(*t.datatype);
    return s;
  }

  static std::string term_type_iri(rml::TermType t) {
    switch (t) {
      case rml::TermType::iri: return "rr:IRI";
      case rml::TermType::literal: return "rr:Literal";
      case rml::TermType::blank: return "rr:BlankNode";
    }
    return "rr:Literal";
  }

  void term_map(Block& b, const rml::TermMap& t, Position pos) const {
    switch (t.kind) {
      case rml::TermMapKind::constant:
        b.add("rr:constant", t.term_type == rml::TermType::iri ? iri(t.value) : literal(t));
        return;  // a constant carries its own term type and datatype
      case rml::TermMapKind::reference:
        b.add("rml:reference", turtle_string(t.value));
        break;
      case rml::TermMapKind::template_:
        b.add("rr:template", turtle_string(t.value));
        break;
      case rml::TermMapKind::function: {
        if (t.fallback_reference) b.add("rml:reference", turtle_string(*t.fallback_reference));
        auto& fv = b.add_block("fnml:functionValue");
        auto& exec = fv.add_block("rr:predicateObjectMap");
        exec.add("rr:predicate", "fno:executes");
        std::string fn_iri = is_absolute_iri(t.value) ? t.value : std::string(ns::function_ns) + t.value;
        exec.add_block("rr:objectMap").add("rr:constant", iri(fn_iri));
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          auto& param = fv.add_block("rr:predicateObjectMap");
          param.add("rr:predicate", "crosswalkfn:arg" + std::to_string(i + 1));
          term_map(param.add_block("rr:objectMap"), t.args[i], Position::argument);
        }
        fv.add("rr:termType", term_type_iri(t.term_type));
        if (t.datatype) b.add("rr:datatype", iri(*t.datatype));
        if (t.language) b.add("rr:language", turtle_string(*t.language));
        return;
      }
    }
    if (pos != Position::argument || t.term_type != rml::TermType::literal)
      b.add("rr:termType", term_type_iri(t.term_type));
    if (t.datatype) b.add("rr:datatype", iri(*t.datatype));
    if (t.language) b.add("rr:language", turtle_string(*t.language));
  }

  const rml::RmlGraph& graph_;
  std::map<std::string, std::string> namespaces_;
};

}  // namespace

std::string serialize_rml_turtle(const rml::RmlGraph& graph) { return Writer(graph).run(); }

}  // namespace crosswalk::yarrrml
