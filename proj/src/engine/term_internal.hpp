#pragma once

#include "crosswalk/engine.hpp"

namespace crosswalk::engine::detail {

// Turns one generated value into an RDF term according to the map's term type.
rdf::Term make_term(std::string value, const rml::TermMap& tm, const TermContext& ctx);

rdf::Term constant_term(const rml::TermMap& tm);

}  // namespace crosswalk::engine::detail
