#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "crosswalk/iri.hpp"

namespace crosswalk::rdf {

struct Iri {
  std::string value;
  auto operator<=>(const Iri&) const = default;
};

struct BlankNode {
  std::string label;
  auto operator<=>(const BlankNode&) const = default;
};

// Datatype defaults to xsd:string; language-tagged literals carry rdf:langString.
struct Literal {
  std::string lexical;
  std::string datatype{xsd_string};
  std::optional<std::string> language;
  auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<Iri, BlankNode, Literal>;
using Subject = std::variant<Iri, BlankNode>;

inline Literal make_literal(std::string lexical, std::optional<std::string> datatype = std::nullopt,
                            std::optional<std::string> language = std::nullopt) {
  Literal l{std::move(lexical), datatype.value_or(std::string(xsd_string)), std::nullopt};
  if (language) {
    l.language = std::move(language);
    l.datatype = std::string(rdf_lang_string);
  }
  return l;
}

struct Triple {
  Subject subject;
  Iri predicate;
  Term object;
  auto operator<=>(const Triple&) const = default;
};

inline Term to_term(const Subject& s) {
  return std::visit([](const auto& v) -> Term { return v; }, s);
}

}  // namespace crosswalk::rdf
