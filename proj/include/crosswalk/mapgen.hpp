#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/error.hpp"
#include "crosswalk/rml.hpp"
#include "crosswalk/survey.hpp"
#include "crosswalk/tabular.hpp"
#include "crosswalk/yarrrml.hpp"

namespace crosswalk::mapgen {

class PrefixCollisionError : public FormatError {
 public:
  PrefixCollisionError(const std::string& prefix, const std::string& a, const std::string& b)
      : FormatError("prefix \"" + prefix + "\" declared as both <" + a + "> and <" + b + ">") {}
};

struct Guard {
  enum class Kind { requires_function, unless_function, requires_column, unless_column, requires_vocabulary };
  Kind kind = Kind::requires_function;
  std::string name;   // function, column or vocabulary slot
  std::string value;  // requires_vocabulary only
  bool operator==(const Guard&) const = default;
};

struct ObjectSpec {
  enum class Kind { reference, template_, constant, function, join };
  Kind kind = Kind::constant;
  std::string value;  // column, {Column} pattern, constant text, function name or parent mapping id
  std::vector<ObjectSpec> args;              // function
  std::vector<rml::JoinCondition> join_on;  // join
  bool operator==(const ObjectSpec&) const = default;
};

struct PoTemplate {
  std::string predicate;
  ObjectSpec object;
  std::optional<rml::TermType> type;  // default: iri for templates, literal otherwise
  std::vector<Guard> guards;          // all must pass
  std::optional<std::string> datatype;
  std::optional<std::string> language;
  bool operator==(const PoTemplate&) const = default;
};

struct TemplateFragment {
  std::string mapping_id;
  std::string source;           // id of the TableSchema the fragment reads
  std::string subject_pattern;  // {Column} placeholders; relative patterns are resolved against base_iri
  rml::TermType subject_type = rml::TermType::iri;
  std::vector<std::string> classes;
  std::map<std::string, std::string> prefixes;
  std::vector<PoTemplate> po;
  bool operator==(const TemplateFragment&) const = default;
};

struct TemplatePack {
  std::string id;
  std::vector<TemplateFragment> fragments;
  std::map<std::string, std::string> required_prefixes;
  bool operator==(const TemplatePack&) const = default;
};

// Throws JsonSyntaxError or FormatError (including duplicate mapping ids).
TemplatePack parse_template_pack(std::string_view json_text, Diagnostics* diagnostics = nullptr);

bool guard_passes(const Guard& guard, const survey::DecisionSet& decisions);
bool guards_pass(const std::vector<Guard>& guards, const survey::DecisionSet& decisions);

// Prefixes declared by the pack and its fragments; throws
// PrefixCollisionError when two of them disagree.
std::map<std::string, std::string> pack_prefixes(const TemplatePack& pack);

// Checks every fragment against the schema: source binding, columns in
// subject and object patterns, join targets. Throws UnknownColumnError,
// FormatError or DanglingJoinError.
void validate_pack(const TemplatePack& pack, const tabular::TableSchema& schema);

// One YARRRML mapping per fragment, po entries with failing guards left out.
// Decision prefixes override pack prefixes (with a warning). When
// known_functions is given, every function that survives its guard must be
// in it (survey::UnknownFunctionError otherwise).
yarrrml::YarrrmlDocument compile_mappings(const survey::DecisionSet& decisions, const tabular::TableSchema& schema,
                                          const TemplatePack& pack, Diagnostics* diagnostics = nullptr,
                                          const std::set<std::string>* known_functions = nullptr);

}  // namespace crosswalk::mapgen
