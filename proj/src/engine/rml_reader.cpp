#include <cctype>
#include <algorithm>
#include <map>
#include <set>

#include "crosswalk/engine.hpp"
#include "crosswalk/iri.hpp"
#include "crosswalk/turtle.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::engine {

namespace {

using turtle::Node;

std::string rr(std::string_view local) { return std::string(ns::rr) + std::string(local); }
std::string rmlns(std::string_view local) { return std::string(ns::rml) + std::string(local); }

std::string percent_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size() && std::isxdigit(static_cast<unsigned char>(text[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(text[i + 2]))) {
      out.push_back(static_cast<char>(std::stoi(std::string(text.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string describe(const Node& n) {
  switch (n.kind) {
    case Node::Kind::iri: return "<" + n.value + ">";
    case Node::Kind::blank: return "blank node";
    case Node::Kind::literal: return "\"" + n.value + "\"";
  }
  return {};
}

class Reader {
 public:
  explicit Reader(turtle::Document doc) : doc_(std::move(doc)) {
    for (const auto& st : doc_.statements) {
      auto& props = index_[st.subject];
      if (props.empty()) subject_order_.push_back(st.subject);
      props.emplace_back(st.predicate.value, st.object);
    }
  }

  rml::RmlGraph run() {
    rml::RmlGraph g;
    const auto& reserved = yarrrml::reserved_turtle_prefixes();
    for (const auto& [label, iri] : doc_.prefixes)
      if (!reserved.count(label)) g.prefixes.emplace(label, iri);

    std::vector<Node> maps;
    for (const auto& s : subject_order_) {
      bool is_map = false;
      for (const auto& [p, o] : index_.at(s)) {
        if ((p == rdf_type && o.kind == Node::Kind::iri && o.value == rr("TriplesMap")) || p == rmlns("logicalSource") ||
            p == rr("logicalTable"))
          is_map = true;
      }
      if (is_map) maps.push_back(s);
    }
    for (const auto& m : maps) ids_[m] = map_id(m);
    for (const auto& m : maps) g.triples_maps.push_back(triples_map(m));
    rml::validate(g);
    return g;
  }

 private:
  using Props = std::vector<std::pair<std::string, Node>>;

  const Props& props(const Node& n) const {
    static const Props empty;
    auto it = index_.find(n);
    return it == index_.end() ? empty : it->second;
  }

  std::vector<Node> values(const Node& n, const std::string& predicate) const {
    std::vector<Node> out;
    for (const auto& [p, o] : props(n))
      if (p == predicate) out.push_back(o);
    return out;
  }

  std::optional<Node> single(const Node& n, const std::string& predicate, const std::string& where) const {
    auto v = values(n, predicate);
    if (v.size() > 1) throw FormatError(where + ": more than one " + predicate);
    if (v.empty()) return std::nullopt;
    return v.front();
  }

  static std::string literal_text(const Node& n, const std::string& what) {
    if (n.kind != Node::Kind::literal) throw FormatError(what + " must be a literal, got " + describe(n));
    return n.value;
  }

  static std::string iri_text(const Node& n, const std::string& what) {
    if (n.kind != Node::Kind::iri) throw FormatError(what + " must be an IRI, got " + describe(n));
    return n.value;
  }

  static std::string map_id(const Node& n) {
    if (n.kind == Node::Kind::blank) return "_:" + n.value;
    if (!n.value.empty() && n.value[0] == '#') return percent_decode(n.value.substr(1));
    return n.value;
  }

  // Every rr:/rml:/fnml: term on a node must be one the reader understands.
  static void check_known(const Props& ps, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [p, o] : ps) {
      bool ours = p.rfind(ns::rr, 0) == 0 || p.rfind(ns::rml, 0) == 0 || p.rfind(ns::fnml, 0) == 0;
      if (ours && !known.count(p)) {
        std::string name = p;
        if (p.rfind(ns::rr, 0) == 0) name = "rr:" + p.substr(ns::rr.size());
        if (p.rfind(ns::rml, 0) == 0) name = "rml:" + p.substr(ns::rml.size());
        if (p.rfind(ns::fnml, 0) == 0) name = "fnml:" + p.substr(ns::fnml.size());
        throw UnsupportedFeatureError(name, where);
      }
    }
  }

  rml::TriplesMap triples_map(const Node& n) const {
    rml::TriplesMap tm;
    tm.id = ids_.at(n);
    std::string where = "triples map " + tm.id;
    check_known(props(n), {rmlns("logicalSource"), rr("subjectMap"), rr("subject"), rr("predicateObjectMap")}, where);

    auto ls = single(n, rmlns("logicalSource"), where);
    if (!ls) throw FormatError(where + ": missing rml:logicalSource");
    tm.logical_source = logical_source(*ls, where);

    auto sm = values(n, rr("subjectMap"));
    auto shortcut = values(n, rr("subject"));
    if (sm.size() + shortcut.size() != 1) throw FormatError(where + ": expected exactly one subject map");
    if (!shortcut.empty()) {
      tm.subject.term = rml::TermMap::constant(iri_text(shortcut.front(), "rr:subject"), rml::TermType::iri);
    } else {
      check_known(props(sm.front()),
                  {rr("constant"), rmlns("reference"), rr("column"), rr("template"), rr("termType"), rr("class"),
                   std::string(ns::fnml) + "functionValue"},
                  where + " subject map");
      tm.subject.term = term_map(sm.front(), Role::subject, where + " subject map");
      for (const auto& c : values(sm.front(), rr("class"))) tm.subject.classes.push_back(iri_text(c, "rr:class"));
    }

    for (const auto& pom : values(n, rr("predicateObjectMap"))) predicate_object_map(pom, tm, where);
    return tm;
  }

  rml::LogicalSource logical_source(const Node& n, const std::string& where) const {
    check_known(props(n), {rmlns("source"), rmlns("referenceFormulation")}, where + " logical source");
    rml::LogicalSource ls;
    auto src = single(n, rmlns("source"), where);
    if (!src) throw FormatError(where + ": logical source has no rml:source");
    if (src->kind != Node::Kind::literal) throw UnsupportedFeatureError("structured rml:source", where);
    ls.source_id = src->value;
    if (auto rf = single(n, rmlns("referenceFormulation"), where)) {
      auto value = iri_text(*rf, "rml:referenceFormulation");
      if (value != std::string(ns::ql) + "CSV") {
        auto name = value.rfind(ns::ql, 0) == 0 ? "ql:" + value.substr(ns::ql.size()) : value;
        throw UnsupportedFeatureError("reference formulation " + name, where);
      }
    }
    return ls;
  }

  void predicate_object_map(const Node& n, rml::TriplesMap& tm, const std::string& where) const {
    std::string here = where + " predicate-object map";
    check_known(props(n), {rr("predicate"), rr("predicateMap"), rr("object"), rr("objectMap")}, here);
    std::vector<rml::TermMap> predicates;
    for (const auto& p : values(n, rr("predicate")))
      predicates.push_back(rml::TermMap::constant(iri_text(p, "rr:predicate"), rml::TermType::iri));
    for (const auto& p : values(n, rr("predicateMap"))) {
      check_known(props(p), {rr("constant"), rmlns("reference"), rr("column"), rr("template"), rr("termType")}, here);
      predicates.push_back(term_map(p, Role::predicate, here));
    }
    std::vector<rml::ObjectMap> objects;
    for (const auto& o : values(n, rr("object"))) objects.push_back(constant_from(o, here));
    for (const auto& o : values(n, rr("objectMap"))) objects.push_back(object_map(o, here));
    if (predicates.empty()) throw FormatError(here + ": no predicate");
    if (objects.empty()) throw FormatError(here + ": no object");
    for (const auto& p : predicates)
      for (const auto& o : objects) tm.predicate_object_maps.push_back({p, o});
  }

  rml::ObjectMap object_map(const Node& n, const std::string& where) const {
    if (auto parent = single(n, rr("parentTriplesMap"), where)) {
      check_known(props(n), {rr("parentTriplesMap"), rr("joinCondition")}, where);
      rml::ReferencingObjectMap rom;
      auto it = ids_.find(*parent);
      rom.parent_map = it != ids_.end() ? it->second : map_id(*parent);
      for (const auto& jc : values(n, rr("joinCondition"))) {
        auto child = single(jc, rr("child"), where);
        auto par = single(jc, rr("parent"), where);
        if (!child || !par) throw FormatError(where + ": join condition needs rr:child and rr:parent");
        rom.joins.push_back({literal_text(*child, "rr:child"), literal_text(*par, "rr:parent")});
      }
      return rom;
    }
    check_known(props(n),
                {rr("constant"), rmlns("reference"), rr("column"), rr("template"), rr("termType"), rr("datatype"),
                 rr("language"), std::string(ns::fnml) + "functionValue"},
                where);
    return term_map(n, Role::object, where);
  }

  static rml::TermMap constant_from(const Node& c, const std::string& where) {
    switch (c.kind) {
      case Node::Kind::iri: return rml::TermMap::constant(c.value, rml::TermType::iri);
      case Node::Kind::blank: throw UnsupportedFeatureError("blank node constant", where);
      case Node::Kind::literal: {
        auto m = rml::TermMap::constant(c.value, rml::TermType::literal);
        if (!c.language.empty()) m.language = c.language;
        if (!c.datatype.empty()) m.datatype = c.datatype;
        return m;
      }
    }
    return {};
  }

  enum class Role { subject, predicate, object, argument };

  static rml::TermType term_type_from(const Node& n, const std::string& where) {
    auto v = iri_text(n, "rr:termType");
    if (v == rr("IRI")) return rml::TermType::iri;
    if (v == rr("Literal")) return rml::TermType::literal;
    if (v == rr("BlankNode")) return rml::TermType::blank;
    throw FormatError(where + ": unknown rr:termType " + v);
  }

  rml::TermMap term_map(const Node& n, Role role, const std::string& where) const {
    auto constant = single(n, rr("constant"), where);
    auto reference = single(n, rmlns("reference"), where);
    auto column = single(n, rr("column"), where);
    auto templ = single(n, rr("template"), where);
    auto function = single(n, std::string(ns::fnml) + "functionValue", where);
    auto term_type = single(n, rr("termType"), where);
    auto datatype = single(n, rr("datatype"), where);
    auto language = single(n, rr("language"), where);
    if (reference && column) throw FormatError(where + ": both rml:reference and rr:column");
    if (column) reference = column;

    rml::TermMap m;
    if (function) {
      m = function_map(*function, where);
      if (reference) m.fallback_reference = literal_text(*reference, "rml:reference");
      if (term_type) m.term_type = term_type_from(*term_type, where);
    } else {
      int kinds = (constant ? 1 : 0) + (reference ? 1 : 0) + (templ ? 1 : 0);
      if (kinds != 1)
        throw FormatError(where + ": term map needs exactly one of rr:constant, rml:reference, rr:template");
      if (constant) {
        if (term_type || datatype || language)
          throw FormatError(where + ": a constant term map takes no term type, datatype or language");
        return constant_from(*constant, where);
      }
      bool literal_default = role == Role::argument ||
                             (role == Role::object && (reference || datatype || language));
      rml::TermType default_type = literal_default ? rml::TermType::literal : rml::TermType::iri;
      if (reference) {
        m = rml::TermMap::reference(literal_text(*reference, "rml:reference"), default_type);
      } else {
        m = rml::TermMap::templ(literal_text(*templ, "rr:template"), default_type);
      }
      if (term_type) m.term_type = term_type_from(*term_type, where);
    }
    if (datatype) m.datatype = iri_text(*datatype, "rr:datatype");
    if (language) m.language = literal_text(*language, "rr:language");
    return m;
  }

  rml::TermMap function_map(const Node& fv, const std::string& where) const {
    std::string here = where + " function";
    std::optional<std::string> name;
    std::vector<std::pair<std::size_t, rml::TermMap>> params;
    for (const auto& pom : values(fv, rr("predicateObjectMap"))) {
      auto preds = values(pom, rr("predicate"));
      auto objs = values(pom, rr("objectMap"));
      auto obj_shortcut = values(pom, rr("object"));
      if (preds.size() != 1 || objs.size() + obj_shortcut.size() != 1)
        throw FormatError(here + ": each parameter needs one predicate and one object map");
      auto predicate = iri_text(preds.front(), "rr:predicate");
      rml::TermMap value = obj_shortcut.empty() ? term_map(objs.front(), Role::argument, here)
                                                : constant_from(obj_shortcut.front(), here);
      if (predicate == std::string(ns::fno) + "executes") {
        if (value.kind != rml::TermMapKind::constant || value.term_type != rml::TermType::iri)
          throw UnsupportedFeatureError("dynamic fno:executes", here);
        name = value.value;
        continue;
      }
      std::string prefix = std::string(ns::function_ns) + "arg";
      if (predicate.rfind(prefix, 0) != 0) throw UnsupportedFeatureError("named function parameter " + predicate, here);
      std::size_t index = 0;
      try {
        index = std::stoul(predicate.substr(prefix.size()));
      } catch (const std::exception&) {
        throw FormatError(here + ": bad parameter predicate " + predicate);
      }
      params.emplace_back(index, std::move(value));
    }
    if (!name) throw FormatError(here + ": missing fno:executes");
    std::sort(params.begin(), params.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i].first != i + 1) throw FormatError(here + ": parameters must be numbered arg1..argN");

    std::string fn = *name;
    if (fn.rfind(ns::function_ns, 0) == 0) fn = fn.substr(ns::function_ns.size());
    std::vector<rml::TermMap> args;
    for (auto& [i, a] : params) args.push_back(std::move(a));
    auto m = rml::TermMap::function(fn, std::move(args));
    if (auto tt = single(fv, rr("termType"), here)) m.term_type = term_type_from(*tt, here);
    return m;
  }

  turtle::Document doc_;
  std::map<Node, Props> index_;
  std::vector<Node> subject_order_;
  std::map<Node, std::string> ids_;
};

}  // namespace

rml::RmlGraph parse_rml_turtle(std::string_view text) { return Reader(turtle::parse(text)).run(); }

}  // namespace crosswalk::engine
