#include "crosswalk/mapgen.hpp"

#include <set>

#include "crosswalk/json_util.hpp"
#include "crosswalk/template.hpp"

namespace crosswalk::mapgen {

namespace {

using json_util::Json;
using json_util::ObjectReader;

rml::TermType parse_type(const std::string& text, const std::string& where) {
  if (text == "iri") return rml::TermType::iri;
  if (text == "literal") return rml::TermType::literal;
  if (text == "blank") return rml::TermType::blank;
  throw FormatError(where + ": unknown term type \"" + text + "\"");
}

std::map<std::string, std::string> parse_prefix_map(const Json& j, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": prefixes must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [label, iri] : j.items()) {
    if (!iri.is_string()) throw FormatError(where + ": prefix \"" + label + "\" must map to a string");
    out[label] = iri.get<std::string>();
  }
  return out;
}

ObjectSpec parse_object(const Json& j, const std::string& where, Diagnostics* diag) {
  if (!j.is_object()) throw FormatError(where + ": object must be a JSON object");
  ObjectReader r(j, where, diag);
  ObjectSpec o;
  int kinds = 0;
  if (auto v = r.optional_string("reference")) {
    o.kind = ObjectSpec::Kind::reference;
    o.value = *v;
    ++kinds;
  }
  if (auto v = r.optional_string("template")) {
    o.kind = ObjectSpec::Kind::template_;
    o.value = *v;
    ++kinds;
  }
  if (auto v = r.optional_string("constant")) {
    o.kind = ObjectSpec::Kind::constant;
    o.value = *v;
    ++kinds;
  }
  if (auto v = r.optional_string("function")) {
    o.kind = ObjectSpec::Kind::function;
    o.value = *v;
    if (const auto* args = r.get("args")) {
      if (!args->is_array()) throw FormatError(where + ": args must be an array");
      for (std::size_t i = 0; i < args->size(); ++i) {
        auto a = parse_object((*args)[i], where + ".args[" + std::to_string(i) + "]", diag);
        if (a.kind == ObjectSpec::Kind::join || a.kind == ObjectSpec::Kind::function)
          throw FormatError(where + ": function arguments must be references, templates or constants");
        o.args.push_back(std::move(a));
      }
    }
    ++kinds;
  }
  if (const auto* join = r.get("join")) {
    ObjectReader jr(*join, where + ".join", diag);
    o.kind = ObjectSpec::Kind::join;
    o.value = jr.required_string("mapping");
    if (const auto* on = jr.get("on")) {
      if (!on->is_array()) throw FormatError(where + ".join: on must be an array");
      for (const auto& c : *on) {
        ObjectReader cr(c, where + ".join.on", diag);
        o.join_on.push_back({cr.required_string("child"), cr.required_string("parent")});
        cr.finish();
      }
    }
    jr.finish();
    ++kinds;
  }
  if (kinds != 1)
    throw FormatError(where + ": object needs exactly one of reference, template, constant, function, join");
  r.finish();
  return o;
}

Guard parse_guard(const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) throw FormatError(where + ": a guard is an object with one key");
  const std::string key = j.begin().key();
  const Json& value = j.begin().value();
  Guard g;
  if (key == "requires_vocabulary") {
    if (!value.is_object() || value.size() != 1 || !value.begin().value().is_string())
      throw FormatError(where + ": requires_vocabulary takes {slot: value}");
    g.kind = Guard::Kind::requires_vocabulary;
    g.name = value.begin().key();
    g.value = value.begin().value().get<std::string>();
    return g;
  }
  if (!value.is_string()) throw FormatError(where + ": guard \"" + key + "\" takes a string");
  g.name = value.get<std::string>();
  if (key == "requires_function") g.kind = Guard::Kind::requires_function;
  else if (key == "unless_function") g.kind = Guard::Kind::unless_function;
  else if (key == "requires_column") g.kind = Guard::Kind::requires_column;
  else if (key == "unless_column") g.kind = Guard::Kind::unless_column;
  else throw FormatError(where + ": unknown guard \"" + key + "\"");
  return g;
}

PoTemplate parse_po(const Json& j, const std::string& where, Diagnostics* diag) {
  ObjectReader r(j, where, diag);
  PoTemplate po;
  po.predicate = r.required_string("predicate");
  po.object = parse_object(r.required_object("object"), where + ".object", diag);
  if (auto t = r.optional_string("type")) po.type = parse_type(*t, where);
  po.datatype = r.optional_string("datatype");
  po.language = r.optional_string("language");
  if (const auto* guard = r.get("guard")) {
    if (guard->is_array()) {
      for (const auto& g : *guard) po.guards.push_back(parse_guard(g, where + ".guard"));
    } else {
      po.guards.push_back(parse_guard(*guard, where + ".guard"));
    }
  }
  r.finish();
  return po;
}

// "{A} x {B}" -> columns; throws FormatError on malformed patterns.
std::vector<std::string> pattern_columns(const std::string& pattern) {
  return engine::Template::parse(pattern).columns();
}

std::string canonical_column(const tabular::TableSchema& schema, const std::string& name) {
  const auto* c = schema.find(name);
  if (!c) throw UnknownColumnError(name);
  return c->name;
}

// {Column} pattern -> YARRRML $(Column) pattern with schema spelling.
std::string to_yarrrml_pattern(const std::string& pattern, const tabular::TableSchema& schema) {
  std::string out;
  auto parsed = engine::Template::parse(pattern);
  for (const auto& seg : parsed.segments()) {
    if (seg.is_column)
      out += "$(" + canonical_column(schema, seg.text) + ")";
    else
      out += seg.text;
  }
  return out;
}

bool is_relative_pattern(const std::string& pattern) {
  auto head = pattern.substr(0, pattern.find('{'));
  return head.find(':') == std::string::npos;
}

void check_object_columns(const ObjectSpec& o, const tabular::TableSchema& schema) {
  switch (o.kind) {
    case ObjectSpec::Kind::reference: canonical_column(schema, o.value); break;
    case ObjectSpec::Kind::template_:
      for (const auto& c : pattern_columns(o.value)) canonical_column(schema, c);
      break;
    case ObjectSpec::Kind::function:
      for (const auto& a : o.args) check_object_columns(a, schema);
      break;
    case ObjectSpec::Kind::join:
      for (const auto& c : o.join_on) {
        canonical_column(schema, c.child);
        canonical_column(schema, c.parent);
      }
      break;
    case ObjectSpec::Kind::constant: break;
  }
}

}  // namespace

TemplatePack parse_template_pack(std::string_view json_text, Diagnostics* diagnostics) {
  auto doc = json_util::parse(json_text);
  if (!doc.is_object()) throw FormatError("template pack must be a JSON object");
  ObjectReader r(doc, "template pack", diagnostics);
  TemplatePack pack;
  pack.id = r.required_string("id");
  if (const auto* p = r.get("required_prefixes")) pack.required_prefixes = parse_prefix_map(*p, "template pack");
  std::set<std::string> ids;
  const auto& fragments = r.required_array("fragments");
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    std::string where = "fragments[" + std::to_string(i) + "]";
    ObjectReader fr(fragments[i], where, diagnostics);
    TemplateFragment f;
    f.mapping_id = fr.required_string("mapping_id");
    where = "fragment \"" + f.mapping_id + "\"";
    if (!ids.insert(f.mapping_id).second) throw FormatError("duplicate mapping id \"" + f.mapping_id + "\"");
    f.source = fr.required_string("source");
    f.subject_pattern = fr.required_string("subject");
    if (auto t = fr.optional_string("subject_type")) {
      f.subject_type = parse_type(*t, where);
      if (f.subject_type == rml::TermType::literal) throw FormatError(where + ": subjects cannot be literals");
    }
    f.classes = fr.optional_string_array("classes");
    if (const auto* p = fr.get("prefixes")) f.prefixes = parse_prefix_map(*p, where);
    if (const auto* po = fr.get("po")) {
      if (!po->is_array()) throw FormatError(where + ": po must be an array");
      for (std::size_t k = 0; k < po->size(); ++k)
        f.po.push_back(parse_po((*po)[k], where + ".po[" + std::to_string(k) + "]", diagnostics));
    }
    fr.finish();
    pack.fragments.push_back(std::move(f));
  }
  r.finish();
  return pack;
}

bool guard_passes(const Guard& g, const survey::DecisionSet& d) {
  switch (g.kind) {
    case Guard::Kind::requires_function: return d.enabled_functions.count(g.name) > 0;
    case Guard::Kind::unless_function: return d.enabled_functions.count(g.name) == 0;
    case Guard::Kind::requires_column: return d.included_columns.count(g.name) > 0;
    case Guard::Kind::unless_column: return d.included_columns.count(g.name) == 0;
    case Guard::Kind::requires_vocabulary: {
      auto it = d.vocabulary_slots.find(g.name);
      return it != d.vocabulary_slots.end() && it->second == g.value;
    }
  }
  return false;
}

bool guards_pass(const std::vector<Guard>& guards, const survey::DecisionSet& d) {
  for (const auto& g : guards)
    if (!guard_passes(g, d)) return false;
  return true;
}

std::map<std::string, std::string> pack_prefixes(const TemplatePack& pack) {
  auto out = pack.required_prefixes;
  for (const auto& f : pack.fragments) {
    for (const auto& [label, iri] : f.prefixes) {
      auto [it, inserted] = out.emplace(label, iri);
      if (!inserted && it->second != iri) throw PrefixCollisionError(label, it->second, iri);
    }
  }
  return out;
}

void validate_pack(const TemplatePack& pack, const tabular::TableSchema& schema) {
  std::set<std::string> ids;
  for (const auto& f : pack.fragments)
    if (!ids.insert(f.mapping_id).second) throw FormatError("duplicate mapping id \"" + f.mapping_id + "\"");
  for (const auto& f : pack.fragments) {
    if (f.source != schema.id())
      throw FormatError("fragment \"" + f.mapping_id + "\" reads \"" + f.source + "\" but the schema is \"" +
                        schema.id() + "\"");
    for (const auto& c : pattern_columns(f.subject_pattern)) canonical_column(schema, c);
    for (const auto& po : f.po) {
      check_object_columns(po.object, schema);
      if (po.object.kind == ObjectSpec::Kind::join && !ids.count(po.object.value))
        throw DanglingJoinError(f.mapping_id, po.object.value);
      if (po.datatype && po.language)
        throw FormatError("fragment \"" + f.mapping_id + "\": " + po.predicate + " has both datatype and language");
    }
  }
}

yarrrml::YarrrmlDocument compile_mappings(const survey::DecisionSet& decisions, const tabular::TableSchema& schema,
                                          const TemplatePack& pack, Diagnostics* diagnostics,
                                          const std::set<std::string>* known_functions) {
  validate_pack(pack, schema);
  yarrrml::YarrrmlDocument doc;
  doc.prefixes = pack_prefixes(pack);
  for (const auto& [label, iri] : decisions.prefix_map) {
    auto [it, inserted] = doc.prefixes.emplace(label, iri);
    if (!inserted && it->second != iri) {
      if (diagnostics)
        diagnostics->warn("prefix \"" + label + "\": decision <" + iri + "> overrides pack <" + it->second + ">");
      it->second = iri;
    }
  }

  auto resolve = [&](const std::string& pattern) {
    return is_relative_pattern(pattern) ? decisions.base_iri + pattern : pattern;
  };

  for (const auto& f : pack.fragments) {
    yarrrml::YarrrmlMapping m;
    m.sources.push_back({f.source});
    m.subject = yarrrml::classify_value(to_yarrrml_pattern(resolve(f.subject_pattern), schema), f.subject_type);
    m.classes = f.classes;
    for (const auto& po : f.po) {
      if (!guards_pass(po.guards, decisions)) continue;
      yarrrml::PoEntry entry;
      entry.predicate = po.predicate;
      const auto& o = po.object;
      if (o.kind == ObjectSpec::Kind::join) {
        yarrrml::JoinSpec join{o.value, {}};
        for (const auto& c : o.join_on)
          join.conditions.push_back({canonical_column(schema, c.child), canonical_column(schema, c.parent)});
        entry.object = join;
        m.po.push_back(std::move(entry));
        continue;
      }
      auto term_of = [&](const ObjectSpec& spec, std::optional<rml::TermType> type) -> yarrrml::TermSpec {
        switch (spec.kind) {
          case ObjectSpec::Kind::reference:
            return yarrrml::TermSpec::reference(canonical_column(schema, spec.value),
                                                type.value_or(rml::TermType::literal));
          case ObjectSpec::Kind::template_: {
            auto t = type.value_or(rml::TermType::iri);
            auto pattern = t == rml::TermType::iri ? resolve(spec.value) : spec.value;
            return yarrrml::TermSpec::templ(to_yarrrml_pattern(pattern, schema), t);
          }
          case ObjectSpec::Kind::constant:
            return yarrrml::TermSpec::constant(spec.value, type.value_or(rml::TermType::literal));
          default:
            return {};
        }
      };
      yarrrml::TermSpec term;
      if (o.kind == ObjectSpec::Kind::function) {
        if (known_functions && !known_functions->count(o.value)) throw survey::UnknownFunctionError(o.value);
        std::vector<yarrrml::TermSpec> args;
        for (const auto& a : o.args) args.push_back(term_of(a, rml::TermType::literal));
        term = yarrrml::TermSpec::function(o.value, std::move(args), po.type.value_or(rml::TermType::literal));
      } else {
        term = term_of(o, po.type);
      }
      term.datatype = po.datatype;
      term.language = po.language;
      yarrrml::validate(term);
      entry.object = std::move(term);
      m.po.push_back(std::move(entry));
    }
    doc.mappings.emplace(f.mapping_id, std::move(m));
  }
  return doc;
}

}  // namespace crosswalk::mapgen
