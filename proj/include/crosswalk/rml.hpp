#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crosswalk/error.hpp"

// In-memory model of an executable RML mapping: triples maps over CSV
// logical sources. All IRIs in the model are fully expanded; the prefix map
// only drives pretty-printing.
namespace crosswalk::rml {

enum class TermType { iri, literal, blank };
enum class TermMapKind { constant, reference, template_, function };

std::string_view to_string(TermType type);
std::string_view to_string(TermMapKind kind);

struct TermMap {
  TermMapKind kind = TermMapKind::constant;
  // constant: IRI or lexical form; reference: column name; template: pattern
  // with {column} placeholders; function: registry function name.
  std::string value;
  std::vector<TermMap> args;                     // function only
  std::optional<std::string> fallback_reference;  // function only
  TermType term_type = TermType::literal;
  std::optional<std::string> datatype;
  std::optional<std::string> language;

  bool operator==(const TermMap&) const = default;
  bool operator<(const TermMap& other) const;

  static TermMap constant(std::string value, TermType type);
  static TermMap reference(std::string column, TermType type = TermType::literal);
  static TermMap templ(std::string pattern, TermType type = TermType::iri);
  static TermMap function(std::string name, std::vector<TermMap> args, TermType type = TermType::literal);
};

// Throws FormatError when datatype/language are combined or used off literals.
void validate(const TermMap& map);

// Columns a term map reads (references, template placeholders, function
// arguments), in first-use order.
std::vector<std::string> referenced_columns(const TermMap& map);

struct JoinCondition {
  std::string child;
  std::string parent;
  bool operator==(const JoinCondition&) const = default;
  auto operator<=>(const JoinCondition&) const = default;
};

struct ReferencingObjectMap {
  std::string parent_map;
  std::vector<JoinCondition> joins;
  bool operator==(const ReferencingObjectMap&) const = default;
  auto operator<=>(const ReferencingObjectMap&) const = default;
};

using ObjectMap = std::variant<TermMap, ReferencingObjectMap>;

struct PredicateObjectMap {
  TermMap predicate;
  ObjectMap object;
  bool operator==(const PredicateObjectMap&) const = default;
  bool operator<(const PredicateObjectMap& other) const;
};

struct LogicalSource {
  std::string source_id;  // reference formulation is always CSV
  bool operator==(const LogicalSource&) const = default;
};

struct SubjectMap {
  TermMap term;  // term_type is iri or blank
  std::vector<std::string> classes;
  bool operator==(const SubjectMap&) const = default;
};

struct TriplesMap {
  std::string id;
  LogicalSource logical_source;
  SubjectMap subject;
  std::vector<PredicateObjectMap> predicate_object_maps;
  bool operator==(const TriplesMap&) const = default;
};

struct RmlGraph {
  std::vector<TriplesMap> triples_maps;
  std::map<std::string, std::string> prefixes;

  const TriplesMap* find(const std::string& id) const;
};

// Throws FormatError (duplicate ids, bad subject term type, invalid term
// maps) or DanglingJoinError.
void validate(const RmlGraph& graph);

// Structural equality: triples maps compared by id, predicate-object maps and
// classes as multisets. Blank node labels never appear in the model.
bool structurally_equal(const RmlGraph& a, const RmlGraph& b);

// Replaces every function-valued object map by its fallback reference as a
// plain literal; maps with no fallback are dropped.
RmlGraph strip_functions(const RmlGraph& graph);

}  // namespace crosswalk::rml
