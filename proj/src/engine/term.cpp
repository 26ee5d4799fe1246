#include "term_internal.hpp"

#include "crosswalk/iri.hpp"

namespace crosswalk::engine {

namespace detail {

rdf::Term make_term(std::string value, const rml::TermMap& tm, const TermContext& ctx) {
  switch (tm.term_type) {
    case rml::TermType::iri:
      if (!is_absolute_iri(value)) throw IriInvalidError(value, ctx.map_id, ctx.row);
      return rdf::Iri{std::move(value)};
    case rml::TermType::blank:
      return rdf::BlankNode{blank_label(ctx)};
    case rml::TermType::literal:
      break;
  }
  return rdf::make_literal(std::move(value), tm.datatype, tm.language);
}

rdf::Term constant_term(const rml::TermMap& tm) {
  if (tm.term_type == rml::TermType::iri) return rdf::Iri{tm.value};
  return rdf::make_literal(tm.value, tm.datatype, tm.language);
}

}  // namespace detail

std::string blank_label(const TermContext& ctx) {
  static const char* hex = "0123456789abcdef";
  std::string out = "m";
  for (unsigned char c : ctx.map_id) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 0xF]);
  }
  out += "r" + std::to_string(ctx.row);
  if (!ctx.position.empty()) out += "p" + ctx.position;
  return out;
}

namespace {

std::optional<std::string> value_of(const rml::TermMap& tm, const RowAccessor& row, const FunctionRegistry& registry);

std::vector<std::string> values_of(const rml::TermMap& tm, const RowAccessor& row, const FunctionRegistry& registry) {
  switch (tm.kind) {
    case rml::TermMapKind::constant:
      return {tm.value};
    case rml::TermMapKind::reference: {
      auto v = row(tm.value);
      if (!v) return {};
      return {std::string(*v)};
    }
    case rml::TermMapKind::template_: {
      auto v = expand_template(tm.value, row, tm.term_type == rml::TermType::iri);
      if (!v) return {};
      return {std::move(*v)};
    }
    case rml::TermMapKind::function: {
      FunctionArgs args;
      for (const auto& a : tm.args) args.push_back(value_of(a, row, registry));
      return registry.call(tm.value, args);
    }
  }
  return {};
}

std::optional<std::string> value_of(const rml::TermMap& tm, const RowAccessor& row, const FunctionRegistry& registry) {
  auto v = values_of(tm, row, registry);
  if (v.empty()) return std::nullopt;
  return std::move(v.front());
}

}  // namespace

std::vector<rdf::Term> generate_terms(const rml::TermMap& tm, const RowAccessor& row, const FunctionRegistry& registry,
                                      const TermContext& ctx) {
  if (tm.kind == rml::TermMapKind::constant) return {detail::constant_term(tm)};
  std::vector<rdf::Term> out;
  for (auto& v : values_of(tm, row, registry)) out.push_back(detail::make_term(std::move(v), tm, ctx));
  return out;
}

std::optional<rdf::Term> generate_term(const rml::TermMap& tm, const RowAccessor& row,
                                       const FunctionRegistry& registry, const TermContext& ctx) {
  auto terms = generate_terms(tm, row, registry, ctx);
  if (terms.empty()) return std::nullopt;
  return std::move(terms.front());
}

}  // namespace crosswalk::engine
