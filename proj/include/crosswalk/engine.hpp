#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/error.hpp"
#include "crosswalk/rdf.hpp"
#include "crosswalk/rml.hpp"
#include "crosswalk/tabular.hpp"
#include "crosswalk/template.hpp"

namespace crosswalk::engine {

class MissingSourceError : public ExecutionError {
 public:
  MissingSourceError(const std::string& source, const std::string& map_id)
      : ExecutionError("no data bound to logical source \"" + source + "\"", map_id) {}
};

class FunctionNotFoundError : public ExecutionError {
 public:
  FunctionNotFoundError(const std::string& name, const std::string& map_id = {})
      : ExecutionError("unknown function \"" + name + "\"", map_id), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class IriInvalidError : public ExecutionError {
 public:
  IriInvalidError(const std::string& value, const std::string& map_id = {},
                  std::optional<std::size_t> row = std::nullopt)
      : ExecutionError("generated IRI is not absolute: \"" + value + "\"", map_id, row) {}
};

// ---------------------------------------------------------------------------
// Functions

using FunctionArgs = std::vector<std::optional<std::string>>;
using FunctionImpl = std::function<std::vector<std::string>(const FunctionArgs&)>;

struct FunctionDef {
  FunctionImpl impl;
  std::size_t min_args = 0;
  std::optional<std::size_t> max_args;  // nullopt = variadic
};

class FunctionRegistry {
 public:
  void add(std::string name, FunctionDef def);
  const FunctionDef* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::vector<std::string> names() const;

  // Throws FunctionNotFoundError, or ExecutionError on an arity mismatch.
  std::vector<std::string> call(std::string_view name, const FunctionArgs& args) const;

 private:
  std::map<std::string, FunctionDef, std::less<>> functions_;
};

// Label -> concept IRIs. Keys are matched after normalize_name, so case and
// whitespace runs do not matter.
class LookupTable {
 public:
  void add(std::string_view label, std::string iri);
  std::vector<std::string> lookup(std::string_view label) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

// JSON object {label: IRI | [IRI, ...]}. Bare AAT identifiers ("300054196")
// and "aat:" CURIEs are expanded under http://vocab.getty.edu/aat/.
LookupTable parse_lookup_table(std::string_view json_text);

// The bundled seed: "drawing technique" -> aat:300054196.
LookupTable default_aat_table();

// aat_lookup(label), trim(v), lowercase(v), concat(sep, v...),
// fixed_prefix(prefix, v), split(sep, v). An absent argument yields no value.
FunctionRegistry& register_builtin_functions(FunctionRegistry& registry, LookupTable aat = default_aat_table());

// ---------------------------------------------------------------------------
// Mapping input

// Inverse of yarrrml::serialize_rml_turtle; also accepts hand-written RML in
// the same subset (rr:column, rr:subject/rr:predicate/rr:object shortcuts,
// several predicates or object maps per predicate-object map).
rml::RmlGraph parse_rml_turtle(std::string_view text);

// ---------------------------------------------------------------------------
// Term generation

struct TermContext {
  std::string map_id;
  std::size_t row = 0;
  std::string position;  // "" for subjects, a per-map-unique suffix otherwise
};

// Blank node label derived from the triples map id and row index.
std::string blank_label(const TermContext& ctx);

// All terms a term map yields for one row; empty when a referenced cell is
// absent or a function returns nothing.
std::vector<rdf::Term> generate_terms(const rml::TermMap& tm, const RowAccessor& row, const FunctionRegistry& registry,
                                      const TermContext& ctx = {});

std::optional<rdf::Term> generate_term(const rml::TermMap& tm, const RowAccessor& row,
                                       const FunctionRegistry& registry, const TermContext& ctx = {});

// ---------------------------------------------------------------------------
// Execution

using Sources = std::map<std::string, tabular::TabularDataset, std::less<>>;
using TripleSink = std::function<void(const rdf::Triple&)>;

// Checks sources, functions and columns before touching any row, then streams
// triples to the sink. Duplicates are not removed here.
void execute(const rml::RmlGraph& graph, const Sources& sources, const FunctionRegistry& registry,
             const TripleSink& sink);

std::vector<rdf::Triple> execute(const rml::RmlGraph& graph, const Sources& sources,
                                 const FunctionRegistry& registry);

// ---------------------------------------------------------------------------
// Output

std::string format_term(const rdf::Term& term);
std::string format_ntriple(const rdf::Triple& triple);  // without trailing newline

// Deduplicated lines; sorted bytewise when stable, first-seen order otherwise.
std::string serialize_ntriples(const std::vector<rdf::Triple>& triples, bool stable = true);

}  // namespace crosswalk::engine
