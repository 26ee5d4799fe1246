#include <yaml-cpp/yaml.h>

#include "crosswalk/yarrrml.hpp"

namespace crosswalk::yarrrml {

namespace {

std::string value_text(const TermSpec& t) {
  switch (t.kind) {
    case TermKind::reference: return "$(" + t.value + ")";
    case TermKind::template_:
    case TermKind::constant: return t.value;
    case TermKind::function_call: return t.value;
  }
  return t.value;
}

bool fits_shorthand(const TermSpec& t) {
  if (t.kind == TermKind::function_call) return false;
  if (t.datatype || t.language) return false;
  if (t.term_type == TermType::blank) return false;
  return t.value.find('~') == std::string::npos;
}

std::string shorthand_text(const TermSpec& t) {
  auto text = value_text(t);
  if (t.term_type == TermType::iri) text += "~iri";
  return text;
}

void emit_pair(YAML::Emitter& out, const std::string& a, const std::string& b) {
  out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
}

void emit_annotations(YAML::Emitter& out, const TermSpec& t) {
  if (t.term_type != TermType::literal) out << YAML::Key << "type" << YAML::Value << std::string(rml::to_string(t.term_type));
  if (t.datatype) out << YAML::Key << "datatype" << YAML::Value << *t.datatype;
  if (t.language) out << YAML::Key << "language" << YAML::Value << *t.language;
}

void emit_object(YAML::Emitter& out, const TermSpec& t) {
  out << YAML::BeginMap;
  if (t.kind == TermKind::function_call) {
    out << YAML::Key << "function" << YAML::Value << t.value;
    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < t.args.size(); ++i) emit_pair(out, "arg" + std::to_string(i + 1), shorthand_text(t.args[i]));
    out << YAML::EndSeq;
  } else {
    out << YAML::Key << "value" << YAML::Value << value_text(t);
  }
  emit_annotations(out, t);
  out << YAML::EndMap;
}

void emit_join(YAML::Emitter& out, const JoinSpec& j) {
  out << YAML::BeginMap;
  out << YAML::Key << "mapping" << YAML::Value << j.parent_mapping;
  if (!j.conditions.empty()) {
    out << YAML::Key << "condition" << YAML::Value;
    auto emit_condition = [&](const rml::JoinCondition& c) {
      out << YAML::BeginMap;
      out << YAML::Key << "function" << YAML::Value << "equal";
      out << YAML::Key << "parameters" << YAML::Value << YAML::BeginSeq;
      emit_pair(out, "str1", "$(" + c.child + ")");
      emit_pair(out, "str2", "$(" + c.parent + ")");
      out << YAML::EndSeq;
      out << YAML::EndMap;
    };
    if (j.conditions.size() == 1) {
      emit_condition(j.conditions.front());
    } else {
      out << YAML::BeginSeq;
      for (const auto& c : j.conditions) emit_condition(c);
      out << YAML::EndSeq;
    }
  }
  out << YAML::EndMap;
}

}  // namespace

std::string serialize_yarrrml(const YarrrmlDocument& doc) {
  YAML::Emitter out;
  out.SetIndent(2);
  out << YAML::BeginMap;
  out << YAML::Key << "prefixes" << YAML::Value;
  if (doc.prefixes.empty()) {
    out << YAML::Flow << YAML::BeginMap << YAML::EndMap;
  } else {
    out << YAML::BeginMap;
    for (const auto& [label, iri] : doc.prefixes) out << YAML::Key << label << YAML::Value << iri;
    out << YAML::EndMap;
  }
  out << YAML::Key << "mappings" << YAML::Value;
  if (doc.mappings.empty()) {
    out << YAML::Flow << YAML::BeginMap << YAML::EndMap;
  } else {
    out << YAML::BeginMap;
    for (const auto& [id, m] : doc.mappings) {
      out << YAML::Key << id << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "sources" << YAML::Value << YAML::BeginSeq;
      for (const auto& s : m.sources) out << YAML::Flow << YAML::BeginSeq << (s.access + "~csv") << YAML::EndSeq;
      out << YAML::EndSeq;
      out << YAML::Key << "s" << YAML::Value << value_text(m.subject);
      if (!m.classes.empty() || !m.po.empty()) {
        out << YAML::Key << "po" << YAML::Value << YAML::BeginSeq;
        for (const auto& cls : m.classes) emit_pair(out, "a", cls);
        for (const auto& entry : m.po) {
          if (const auto* t = std::get_if<TermSpec>(&entry.object); t && fits_shorthand(*t)) {
            emit_pair(out, entry.predicate, shorthand_text(*t));
            continue;
          }
          out << YAML::BeginMap;
          out << YAML::Key << "p" << YAML::Value << entry.predicate;
          out << YAML::Key << "o" << YAML::Value;
          if (const auto* t = std::get_if<TermSpec>(&entry.object))
            emit_object(out, *t);
          else
            emit_join(out, std::get<JoinSpec>(entry.object));
          out << YAML::EndMap;
        }
        out << YAML::EndSeq;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  std::string text = out.c_str();
  text += "\n";
  return text;
}

}  // namespace crosswalk::yarrrml
