#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crosswalk::engine {

// A string template with {column} placeholders. "\{", "\}" and "\\" escape
// literal braces and backslashes.
class Template {
 public:
  struct Segment {
    bool is_column;
    std::string text;  // literal text or column name
  };

  // Throws FormatError on unbalanced braces or when no placeholder exists.
  static Template parse(std::string_view pattern);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::vector<std::string> columns() const;

  // Substitutes cell values; any absent cell makes the result absent. With
  // iri_safe every substituted value is percent-encoded.
  template <typename Lookup>
  std::optional<std::string> expand(Lookup&& lookup, bool iri_safe) const;

 private:
  std::vector<Segment> segments_;
};

std::string encode_for_template(std::string_view value, bool iri_safe);

// Escapes braces and backslashes so the text survives Template::parse as a
// literal segment.
std::string escape_template_literal(std::string_view text);

using RowAccessor = std::function<std::optional<std::string_view>(std::string_view column)>;

// Throws UnknownColumnError when the accessor does (by contract).
std::optional<std::string> expand_template(std::string_view pattern, const RowAccessor& row, bool iri_safe);

template <typename Lookup>
std::optional<std::string> Template::expand(Lookup&& lookup, bool iri_safe) const {
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (!seg.is_column) {
      out += seg.text;
      continue;
    }
    std::optional<std::string_view> value = lookup(i, seg.text);
    if (!value) return std::nullopt;
    out += encode_for_template(*value, iri_safe);
  }
  return out;
}

}  // namespace crosswalk::engine
