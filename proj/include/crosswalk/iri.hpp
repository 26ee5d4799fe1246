#pragma once

#include <string>
#include <string_view>

namespace crosswalk {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view rr = "http://www.w3.org/ns/r2rml#";
inline constexpr std::string_view rml = "http://semweb.mmlab.be/ns/rml#";
inline constexpr std::string_view ql = "http://semweb.mmlab.be/ns/ql#";
inline constexpr std::string_view fnml = "http://semweb.mmlab.be/ns/fnml#";
inline constexpr std::string_view fno = "https://w3id.org/function/ontology#";
inline constexpr std::string_view prov = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view dcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view aat = "http://vocab.getty.edu/aat/";
// Registry functions are addressed as <function_ns><name> in RML Turtle.
inline constexpr std::string_view function_ns = "urn:crosswalk:function:";
}  // namespace ns

inline constexpr std::string_view xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view rdf_lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// scheme ":" rest, where rest contains no whitespace, controls, or the
// characters N-Triples forbids inside IRIREF.
bool is_absolute_iri(std::string_view text);

// Percent-encodes every byte outside the RFC 3986 unreserved set
// (ALPHA / DIGIT / "-" / "." / "_" / "~") using uppercase hex.
std::string percent_encode(std::string_view text);

// Trim, collapse internal whitespace runs to one space, ASCII lowercase.
std::string normalize_name(std::string_view name);

std::string trim(std::string_view text);

// BCP 47 shape check: alpha{1,8} ("-" alphanum{1,8})*.
bool is_language_tag(std::string_view tag);

}  // namespace crosswalk
