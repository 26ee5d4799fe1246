#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crosswalk/error.hpp"
#include "crosswalk/rml.hpp"

namespace crosswalk::yarrrml {

class YamlSyntaxError : public Error {
 public:
  using Error::Error;
};

class UnknownPrefixError : public Error {
 public:
  UnknownPrefixError(const std::string& prefix, const std::string& location)
      : Error("undeclared prefix \"" + prefix + ":\"" + (location.empty() ? "" : " (at " + location + ")")),
        prefix_(prefix) {}
  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

using rml::TermType;

enum class TermKind { constant, reference, template_, function_call };

// One term of a YARRRML mapping, kept in YARRRML notation: references hold
// the bare column name, templates keep their $(column) placeholders, IRIs may
// be CURIEs.
struct TermSpec {
  TermKind kind = TermKind::constant;
  std::string value;
  std::vector<TermSpec> args;  // function_call only
  TermType term_type = TermType::literal;
  std::optional<std::string> datatype;
  std::optional<std::string> language;

  bool operator==(const TermSpec&) const = default;

  static TermSpec constant(std::string value, TermType type = TermType::literal);
  static TermSpec reference(std::string column, TermType type = TermType::literal);
  static TermSpec templ(std::string pattern, TermType type = TermType::iri);
  static TermSpec function(std::string name, std::vector<TermSpec> args, TermType type = TermType::literal);
};

// Reads "$(col)" as a reference, text with embedded "$(...)" as a template
// and anything else as a constant.
TermSpec classify_value(std::string_view text, TermType type);

// Throws FormatError when the TermSpec invariants fail.
void validate(const TermSpec& spec);

struct JoinSpec {
  std::string parent_mapping;
  std::vector<rml::JoinCondition> conditions;  // child reference, parent reference
  bool operator==(const JoinSpec&) const = default;
};

struct PoEntry {
  std::string predicate;
  std::variant<TermSpec, JoinSpec> object;
  bool operator==(const PoEntry&) const = default;
};

struct Source {
  std::string access;  // logical source id; reference formulation is csv
  bool operator==(const Source&) const = default;
};

struct YarrrmlMapping {
  std::vector<Source> sources;
  TermSpec subject;
  std::vector<std::string> classes;
  std::vector<PoEntry> po;
  bool operator==(const YarrrmlMapping&) const = default;
};

struct YarrrmlDocument {
  std::map<std::string, std::string> prefixes;
  std::map<std::string, YarrrmlMapping> mappings;
  bool operator==(const YarrrmlDocument&) const = default;
};

// Always resolvable without a declaration: rdf, rdfs, xsd.
const std::map<std::string, std::string>& builtin_prefixes();

// Expands a CURIE against the document prefixes (then the built-ins).
// Absolute IRIs and text without a prefix are returned unchanged; an
// undeclared prefix throws UnknownPrefixError.
std::string expand_curie(std::string_view text, const std::map<std::string, std::string>& prefixes,
                         const std::string& location = {});

// Supported subset: prefixes; mappings (alias mapping) with sources
// (shorthand and long form, csv only), s/subject, po/predicateobjects in
// shorthand and long form, datatype, language, type, function/parameters and
// joins through condition/equal. Anything else raises
// UnsupportedFeatureError naming the construct and its line.
YarrrmlDocument parse_yarrrml(std::string_view yaml_text);

// Stable key order: prefixes, then mappings sorted by id. LF line endings.
std::string serialize_yarrrml(const YarrrmlDocument& doc);

// Throws DanglingJoinError.
rml::RmlGraph to_rml(const YarrrmlDocument& doc);

// Deterministic Turtle: rr/rml/ql/fnml/fno plus the document prefixes, maps
// sorted by id. Function term maps carry fnml:functionValue and, when the
// function has a reference argument, a plain rml:reference fallback.
std::string serialize_rml_turtle(const rml::RmlGraph& graph);

// Prefix labels the Turtle writer reserves for the mapping vocabularies.
const std::map<std::string, std::string>& reserved_turtle_prefixes();

}  // namespace crosswalk::yarrrml
