#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>

#include "crosswalk/iri.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::yarrrml {

TermSpec TermSpec::constant(std::string value, TermType type) {
  TermSpec t;
  t.kind = TermKind::constant;
  t.value = std::move(value);
  t.term_type = type;
  return t;
}

TermSpec TermSpec::reference(std::string column, TermType type) {
  TermSpec t;
  t.kind = TermKind::reference;
  t.value = std::move(column);
  t.term_type = type;
  return t;
}

TermSpec TermSpec::templ(std::string pattern, TermType type) {
  TermSpec t;
  t.kind = TermKind::template_;
  t.value = std::move(pattern);
  t.term_type = type;
  return t;
}

TermSpec TermSpec::function(std::string name, std::vector<TermSpec> args, TermType type) {
  TermSpec t;
  t.kind = TermKind::function_call;
  t.value = std::move(name);
  t.args = std::move(args);
  t.term_type = type;
  return t;
}

namespace {

// Offsets of "$(" ... ")" placeholders.
struct Placeholder {
  std::size_t begin;
  std::size_t end;  // one past ")"
  std::string column;
};

std::vector<Placeholder> find_placeholders(std::string_view text) {
  std::vector<Placeholder> out;
  std::size_t pos = 0;
  while ((pos = text.find("$(", pos)) != std::string_view::npos) {
    auto close = text.find(')', pos + 2);
    if (close == std::string_view::npos)
      throw FormatError("unterminated $( placeholder in \"" + std::string(text) + "\"");
    auto column = std::string(text.substr(pos + 2, close - pos - 2));
    if (column.empty()) throw FormatError("empty $() placeholder in \"" + std::string(text) + "\"");
    out.push_back({pos, close + 1, std::move(column)});
    pos = close + 1;
  }
  return out;
}

}  // namespace

TermSpec classify_value(std::string_view text, TermType type) {
  auto ph = find_placeholders(text);
  if (ph.size() == 1 && ph[0].begin == 0 && ph[0].end == text.size()) return TermSpec::reference(ph[0].column, type);
  if (!ph.empty()) return TermSpec::templ(std::string(text), type);
  return TermSpec::constant(std::string(text), type);
}

void validate(const TermSpec& spec) {
  if (spec.datatype && spec.language)
    throw FormatError("term \"" + spec.value + "\" has both a datatype and a language");
  if ((spec.datatype || spec.language) && spec.term_type != TermType::literal)
    throw FormatError("term \"" + spec.value + "\" has a datatype or language but is not a literal");
  if (spec.language && !is_language_tag(*spec.language))
    throw FormatError("\"" + *spec.language + "\" is not a language tag");
  switch (spec.kind) {
    case TermKind::reference:
      if (spec.value.empty()) throw FormatError("empty reference");
      break;
    case TermKind::template_:
      if (find_placeholders(spec.value).empty())
        throw FormatError("template \"" + spec.value + "\" has no $(column) placeholder");
      break;
    case TermKind::constant:
      if (spec.value.find("$(") != std::string::npos)
        throw FormatError("constant \"" + spec.value + "\" contains a $( placeholder");
      if (spec.term_type == TermType::blank) throw FormatError("constant terms cannot be blank nodes");
      break;
    case TermKind::function_call:
      if (spec.value.empty()) throw FormatError("function call without a function name");
      for (const auto& a : spec.args) {
        if (a.kind == TermKind::function_call)
          throw UnsupportedFeatureError("nested function call in \"" + spec.value + "\"", "");
        validate(a);
      }
      break;
  }
  if (spec.kind != TermKind::function_call && !spec.args.empty())
    throw FormatError("only function calls take arguments");
}

const std::map<std::string, std::string>& builtin_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"rdf", std::string(ns::rdf)}, {"rdfs", std::string(ns::rdfs)}, {"xsd", std::string(ns::xsd)}};
  return prefixes;
}

namespace {

bool is_prefix_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

}  // namespace

std::string expand_curie(std::string_view text, const std::map<std::string, std::string>& prefixes,
                         const std::string& location) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::string(text);
  auto prefix = std::string(text.substr(0, colon));
  if (!std::all_of(prefix.begin(), prefix.end(), is_prefix_char)) return std::string(text);
  auto local = text.substr(colon + 1);
  if (auto it = prefixes.find(prefix); it != prefixes.end()) return it->second + std::string(local);
  if (auto it = builtin_prefixes().find(prefix); it != builtin_prefixes().end())
    return it->second + std::string(local);
  static const std::vector<std::string> schemes = {"urn", "mailto", "tag", "data"};
  if (local.substr(0, 2) == "//" || std::find(schemes.begin(), schemes.end(), prefix) != schemes.end())
    return std::string(text);
  throw UnknownPrefixError(prefix, location);
}

namespace {

std::string where(const YAML::Node& node) {
  const auto& m = node.Mark();
  if (m.is_null()) return {};
  return "line " + std::to_string(m.line + 1);
}

std::string scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw FormatError(what + " must be a scalar (" + where(node) + ")");
  return node.as<std::string>();
}

class Parser {
 public:
  YarrrmlDocument run(const YAML::Node& root) {
    if (!root || root.IsNull()) return doc_;
    if (!root.IsMap()) throw FormatError("YARRRML document must be a mapping (" + where(root) + ")");
    std::optional<YAML::Node> mappings;
    for (const auto& kv : root) {
      auto key = scalar(kv.first, "top-level key");
      if (key == "prefixes") {
        read_prefixes(kv.second);
      } else if (key == "mappings" || key == "mapping") {
        if (mappings) throw FormatError("both \"mappings\" and \"mapping\" present (" + where(kv.first) + ")");
        mappings.emplace(kv.second);
      } else {
        throw UnsupportedFeatureError("top-level key \"" + key + "\"", where(kv.first));
      }
    }
    if (mappings && !mappings->IsNull()) {
      if (!mappings->IsMap()) throw FormatError("\"mappings\" must be a mapping (" + where(*mappings) + ")");
      for (const auto& kv : *mappings) {
        auto id = scalar(kv.first, "mapping id");
        if (doc_.mappings.count(id)) throw FormatError("duplicate mapping id \"" + id + "\"");
        doc_.mappings.emplace(id, read_mapping(id, kv.second));
      }
    }
    return std::move(doc_);
  }

 private:
  void read_prefixes(const YAML::Node& node) {
    if (node.IsNull()) return;
    if (!node.IsMap()) throw FormatError("\"prefixes\" must be a mapping (" + where(node) + ")");
    for (const auto& kv : node) {
      auto label = scalar(kv.first, "prefix label");
      auto iri = scalar(kv.second, "prefix IRI");
      if (!is_absolute_iri(iri))
        throw FormatError("prefix \"" + label + "\" maps to non-absolute IRI \"" + iri + "\" (" + where(kv.second) + ")");
      doc_.prefixes[label] = iri;
    }
  }

  void check_iri(const std::string& text, const YAML::Node& at) {
    auto expanded = expand_curie(text, doc_.prefixes, where(at));
    (void)expanded;
  }

  // Leading CURIE of an IRI template, e.g. "ex:obj/$(ID)".
  void check_iri_pattern(const TermSpec& t, const YAML::Node& at) {
    if (t.term_type != TermType::iri) return;
    if (t.kind == TermKind::constant) {
      check_iri(t.value, at);
    } else if (t.kind == TermKind::template_) {
      auto head = t.value.substr(0, t.value.find("$("));
      if (head.find(':') != std::string::npos) check_iri(t.value, at);
    }
  }

  void check_datatype(const TermSpec& t, const YAML::Node& at) {
    if (t.datatype) check_iri(*t.datatype, at);
  }

  std::vector<Source> read_sources(const YAML::Node& node) {
    std::vector<Source> out;
    auto one = [&](const YAML::Node& n) {
      if (n.IsScalar()) {
        out.push_back(shorthand_source(n.as<std::string>(), std::nullopt, n));
      } else if (n.IsSequence()) {
        if (n.size() == 0 || n.size() > 2) throw FormatError("malformed source (" + where(n) + ")");
        std::optional<std::string> iterator;
        if (n.size() == 2) iterator = scalar(n[1], "source iterator");
        out.push_back(shorthand_source(scalar(n[0], "source"), iterator, n));
      } else if (n.IsMap()) {
        std::string access;
        std::string formulation = "csv";
        for (const auto& kv : n) {
          auto key = scalar(kv.first, "source key");
          if (key == "access") {
            access = scalar(kv.second, "source access");
          } else if (key == "referenceFormulation") {
            formulation = scalar(kv.second, "referenceFormulation");
          } else {
            throw UnsupportedFeatureError("source key \"" + key + "\"", where(kv.first));
          }
        }
        if (access.empty()) throw FormatError("source without access (" + where(n) + ")");
        check_formulation(formulation, n);
        out.push_back({access});
      } else {
        throw FormatError("malformed source (" + where(n) + ")");
      }
    };
    if (node.IsScalar() || node.IsMap()) {
      one(node);
    } else if (node.IsSequence()) {
      bool all_scalars = std::all_of(node.begin(), node.end(), [](const YAML::Node& n) { return n.IsScalar(); });
      bool every_has_formulation = std::all_of(node.begin(), node.end(), [](const YAML::Node& n) {
        return n.IsScalar() && n.as<std::string>().find('~') != std::string::npos;
      });
      if (all_scalars && !every_has_formulation) {
        one(node);  // [access~formulation, iterator]
      } else {
        for (const auto& n : node) one(n);
      }
    } else {
      throw FormatError("\"sources\" is empty (" + where(node) + ")");
    }
    if (out.empty()) throw FormatError("mapping has no source (" + where(node) + ")");
    if (out.size() > 1) throw UnsupportedFeatureError("multiple sources in one mapping", where(node));
    return out;
  }

  void check_formulation(const std::string& formulation, const YAML::Node& at) {
    std::string f;
    for (char c : formulation) f.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (f != "csv" && f != "ql:csv")
      throw UnsupportedFeatureError("reference formulation \"" + formulation + "\"", where(at));
  }

  Source shorthand_source(const std::string& text, const std::optional<std::string>& iterator, const YAML::Node& at) {
    auto tilde = text.rfind('~');
    if (tilde == std::string::npos || tilde == 0)
      throw FormatError("source \"" + text + "\" lacks a ~formulation suffix (" + where(at) + ")");
    check_formulation(text.substr(tilde + 1), at);
    if (iterator) throw UnsupportedFeatureError("iterator on a CSV source", where(at));
    return {text.substr(0, tilde)};
  }

  static bool strip_suffix(std::string& text, std::string_view suffix) {
    if (text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0) {
      text.erase(text.size() - suffix.size());
      return true;
    }
    return false;
  }

  TermSpec read_subject(const YAML::Node& node) {
    if (node.IsSequence() && node.size() != 1) throw UnsupportedFeatureError("multiple subjects", where(node));
    const YAML::Node n = node.IsSequence() ? node[0] : node;
    if (n.IsMap()) throw UnsupportedFeatureError("subject in long form", where(n));
    auto text = scalar(n, "subject");
    strip_suffix(text, "~iri");
    if (text.size() > 6 && text.compare(text.size() - 6, 6, "~blank") == 0)
      throw UnsupportedFeatureError("blank node subjects", where(n));
    auto t = classify_value(text, TermType::iri);
    validate(t);
    check_iri_pattern(t, n);
    return t;
  }

  TermSpec shorthand_object(std::string text, const YAML::Node&) {
    TermType type = TermType::literal;
    if (strip_suffix(text, "~iri")) type = TermType::iri;
    return classify_value(text, type);
  }

  static TermType parse_type(const std::string& t, const YAML::Node& at) {
    if (t == "iri") return TermType::iri;
    if (t == "literal") return TermType::literal;
    if (t == "blank") return TermType::blank;
    throw FormatError("unknown term type \"" + t + "\" (" + where(at) + ")");
  }

  TermSpec read_parameter_value(const YAML::Node& node) {
    if (!node.IsScalar()) throw UnsupportedFeatureError("non-scalar function parameter", where(node));
    auto t = shorthand_object(node.as<std::string>(), node);
    check_iri_pattern(t, node);
    return t;
  }

  std::vector<TermSpec> read_parameters(const YAML::Node& node) {
    std::vector<TermSpec> args;
    if (!node || node.IsNull()) return args;
    if (!node.IsSequence()) throw FormatError("\"parameters\" must be a list (" + where(node) + ")");
    for (const auto& p : node) {
      if (p.IsSequence()) {
        if (p.size() != 2) throw FormatError("parameter must be [name, value] (" + where(p) + ")");
        args.push_back(read_parameter_value(p[1]));
      } else if (p.IsMap()) {
        std::optional<YAML::Node> value;
        for (const auto& kv : p) {
          auto key = scalar(kv.first, "parameter key");
          if (key == "value") {
            value.emplace(kv.second);
          } else if (key != "parameter") {
            throw UnsupportedFeatureError("parameter key \"" + key + "\"", where(kv.first));
          }
        }
        if (!value) throw FormatError("parameter without value (" + where(p) + ")");
        args.push_back(read_parameter_value(*value));
      } else {
        throw FormatError("malformed parameter (" + where(p) + ")");
      }
    }
    return args;
  }

  JoinSpec read_join(const std::string& parent, const YAML::Node& condition) {
    JoinSpec join{parent, {}};
    if (!condition || condition.IsNull()) return join;
    std::vector<YAML::Node> conditions;
    if (condition.IsSequence())
      for (const auto& c : condition) conditions.push_back(c);
    else
      conditions.push_back(condition);
    for (const auto& c : conditions) {
      if (!c.IsMap()) throw FormatError("join condition must be a mapping (" + where(c) + ")");
      std::string function;
      std::optional<YAML::Node> params;
      for (const auto& kv : c) {
        auto key = scalar(kv.first, "condition key");
        if (key == "function") {
          function = scalar(kv.second, "condition function");
        } else if (key == "parameters") {
          params.emplace(kv.second);
        } else {
          throw UnsupportedFeatureError("condition key \"" + key + "\"", where(kv.first));
        }
      }
      if (function != "equal") throw UnsupportedFeatureError("join condition function \"" + function + "\"", where(c));
      if (!params || !params->IsSequence() || params->size() != 2)
        throw FormatError("equal condition needs two parameters (" + where(c) + ")");
      std::string child, parent_ref;
      for (const auto& p : *params) {
        if (!p.IsSequence() || p.size() != 2) throw FormatError("malformed condition parameter (" + where(p) + ")");
        auto name = scalar(p[0], "condition parameter name");
        auto value = classify_value(scalar(p[1], "condition parameter value"), TermType::literal);
        if (value.kind != TermKind::reference)
          throw UnsupportedFeatureError("join condition on a non-reference value", where(p[1]));
        if (name == "str1")
          child = value.value;
        else if (name == "str2")
          parent_ref = value.value;
        else
          throw FormatError("equal parameters must be str1 and str2 (" + where(p) + ")");
      }
      if (child.empty() || parent_ref.empty()) throw FormatError("equal condition needs str1 and str2 (" + where(c) + ")");
      join.conditions.push_back({child, parent_ref});
    }
    return join;
  }

  // Long-form object mapping: value/type/datatype/language, function call or join.
  std::variant<TermSpec, JoinSpec> read_object_map(const YAML::Node& node) {
    std::optional<std::string> value, function, mapping, datatype, language, type;
    std::optional<YAML::Node> parameters, condition;
    for (const auto& kv : node) {
      auto key = scalar(kv.first, "object key");
      if (key == "value") value = scalar(kv.second, "object value");
      else if (key == "function" || key == "fn") function = scalar(kv.second, "function");
      else if (key == "parameters" || key == "pms") parameters.emplace(kv.second);
      else if (key == "mapping") mapping = scalar(kv.second, "mapping");
      else if (key == "condition") condition.emplace(kv.second);
      else if (key == "datatype") datatype = scalar(kv.second, "datatype");
      else if (key == "language") language = scalar(kv.second, "language");
      else if (key == "type") type = scalar(kv.second, "type");
      else throw UnsupportedFeatureError("object key \"" + key + "\"", where(kv.first));
    }
    int forms = (value ? 1 : 0) + (function ? 1 : 0) + (mapping ? 1 : 0);
    if (forms != 1) throw FormatError("object needs exactly one of value, function, mapping (" + where(node) + ")");
    if (mapping) {
      if (datatype || language || type || parameters)
        throw FormatError("join objects take only mapping and condition (" + where(node) + ")");
      return read_join(*mapping, condition ? *condition : YAML::Node(YAML::NodeType::Null));
    }
    if (condition) throw UnsupportedFeatureError("condition outside a join", where(node));
    TermSpec t;
    if (function) {
      t = TermSpec::function(*function, read_parameters(parameters ? *parameters : YAML::Node(YAML::NodeType::Null)));
      if (function->find(':') != std::string::npos) check_iri(*function, node);
    } else {
      if (parameters) throw FormatError("parameters without function (" + where(node) + ")");
      std::string v = *value;
      TermType tt = TermType::literal;
      if (strip_suffix(v, "~iri")) tt = TermType::iri;
      t = classify_value(v, tt);
    }
    if (type) t.term_type = parse_type(*type, node);
    t.datatype = datatype;
    t.language = language;
    return t;
  }

  void apply_annotations(TermSpec& t, const std::optional<std::string>& datatype,
                         const std::optional<std::string>& language, const std::optional<std::string>& type,
                         const YAML::Node& at) {
    if (type) t.term_type = parse_type(*type, at);
    if (datatype) t.datatype = datatype;
    if (language) t.language = language;
  }

  void finish_object(TermSpec& t, const YAML::Node& at) {
    validate(t);
    check_iri_pattern(t, at);
    check_datatype(t, at);
  }

  std::string predicate_text(const YAML::Node& node) {
    if (node.IsSequence()) throw UnsupportedFeatureError("multiple predicates in one entry", where(node));
    auto p = scalar(node, "predicate");
    if (p != "a") check_iri(p, node);
    return p;
  }

  static bool is_type_predicate(const std::string& p) { return p == "a" || p == "rdf:type"; }

  void read_po(YarrrmlMapping& mapping, const YAML::Node& entry) {
    if (entry.IsSequence()) {
      if (entry.size() < 2 || entry.size() > 3)
        throw FormatError("shorthand po entry must be [predicate, object(, datatype|lang)] (" + where(entry) + ")");
      auto predicate = predicate_text(entry[0]);
      if (entry[1].IsSequence()) throw UnsupportedFeatureError("multiple objects in one entry", where(entry[1]));
      auto object_text = scalar(entry[1], "object");
      if (is_type_predicate(predicate) && entry.size() == 2 &&
          classify_value(object_text, TermType::iri).kind == TermKind::constant) {
        std::string cls = object_text;
        strip_suffix(cls, "~iri");
        check_iri(cls, entry[1]);
        mapping.classes.push_back(cls);
        return;
      }
      auto t = shorthand_object(object_text, entry[1]);
      if (entry.size() == 3) {
        auto extra = scalar(entry[2], "datatype or language");
        if (strip_suffix(extra, "~lang"))
          t.language = extra;
        else
          t.datatype = extra;
      }
      if (is_type_predicate(predicate)) t.term_type = TermType::iri;
      finish_object(t, entry[1]);
      mapping.po.push_back({predicate == "a" ? "rdf:type" : predicate, std::move(t)});
      return;
    }
    if (!entry.IsMap()) throw FormatError("malformed po entry (" + where(entry) + ")");
    std::optional<YAML::Node> p, o;
    std::optional<std::string> datatype, language, type;
    for (const auto& kv : entry) {
      auto key = scalar(kv.first, "po key");
      if (key == "p" || key == "predicate" || key == "predicates") p.emplace(kv.second);
      else if (key == "o" || key == "object" || key == "objects") o.emplace(kv.second);
      else if (key == "datatype") datatype = scalar(kv.second, "datatype");
      else if (key == "language") language = scalar(kv.second, "language");
      else if (key == "type") type = scalar(kv.second, "type");
      else throw UnsupportedFeatureError("po key \"" + key + "\"", where(kv.first));
    }
    if (!p || !o) throw FormatError("po entry needs p and o (" + where(entry) + ")");
    auto predicate = predicate_text(*p);
    if (o->IsSequence() && o->size() != 1) throw UnsupportedFeatureError("multiple objects in one entry", where(*o));
    const YAML::Node obj = o->IsSequence() ? (*o)[0] : *o;
    std::variant<TermSpec, JoinSpec> object;
    if (obj.IsMap()) {
      object = read_object_map(obj);
    } else {
      auto text = scalar(obj, "object");
      if (is_type_predicate(predicate) && !datatype && !language && !type &&
          classify_value(text, TermType::iri).kind == TermKind::constant) {
        strip_suffix(text, "~iri");
        check_iri(text, obj);
        mapping.classes.push_back(text);
        return;
      }
      object = shorthand_object(text, obj);
    }
    if (auto* t = std::get_if<TermSpec>(&object)) {
      apply_annotations(*t, datatype, language, type, entry);
      if (is_type_predicate(predicate)) t->term_type = TermType::iri;
      finish_object(*t, obj);
    } else if (datatype || language || type) {
      throw FormatError("join objects cannot carry datatype, language or type (" + where(entry) + ")");
    }
    mapping.po.push_back({predicate == "a" ? "rdf:type" : predicate, std::move(object)});
  }

  YarrrmlMapping read_mapping(const std::string& id, const YAML::Node& node) {
    if (!node.IsMap()) throw FormatError("mapping \"" + id + "\" must be a mapping (" + where(node) + ")");
    YarrrmlMapping m;
    bool have_subject = false;
    bool have_sources = false;
    for (const auto& kv : node) {
      auto key = scalar(kv.first, "mapping key");
      if (key == "sources" || key == "source") {
        m.sources = read_sources(kv.second);
        have_sources = true;
      } else if (key == "s" || key == "subject" || key == "subjects") {
        m.subject = read_subject(kv.second);
        have_subject = true;
      } else if (key == "po" || key == "predicateobjects") {
        if (kv.second.IsNull()) continue;
        if (!kv.second.IsSequence()) throw FormatError("\"po\" must be a list (" + where(kv.second) + ")");
        for (const auto& entry : kv.second) read_po(m, entry);
      } else {
        throw UnsupportedFeatureError("mapping key \"" + key + "\"", where(kv.first));
      }
    }
    if (!have_sources) throw FormatError("mapping \"" + id + "\" has no sources");
    if (!have_subject) throw FormatError("mapping \"" + id + "\" has no subject");
    return m;
  }

  YarrrmlDocument doc_;
};

}  // namespace

YarrrmlDocument parse_yarrrml(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw YamlSyntaxError(std::string("YAML syntax error: ") + e.what());
  }
  try {
    return Parser().run(root);
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("malformed YARRRML: ") + e.what());
  }
}

}  // namespace crosswalk::yarrrml
