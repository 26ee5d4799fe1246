#include "crosswalk/template.hpp"

#include "crosswalk/error.hpp"
#include "crosswalk/iri.hpp"

namespace crosswalk::engine {

Template Template::parse(std::string_view pattern) {
  Template t;
  std::string current;
  bool in_column = false;
  bool has_column = false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    if (c == '\\' && i + 1 < pattern.size() &&
        (pattern[i + 1] == '{' || pattern[i + 1] == '}' || pattern[i + 1] == '\\')) {
      current.push_back(pattern[++i]);
      continue;
    }
    if (c == '{') {
      if (in_column) throw FormatError("nested '{' in template \"" + std::string(pattern) + "\"");
      if (!current.empty()) t.segments_.push_back({false, std::move(current)});
      current.clear();
      in_column = true;
      continue;
    }
    if (c == '}') {
      if (!in_column) throw FormatError("unbalanced '}' in template \"" + std::string(pattern) + "\"");
      if (current.empty()) throw FormatError("empty placeholder in template \"" + std::string(pattern) + "\"");
      t.segments_.push_back({true, std::move(current)});
      current.clear();
      in_column = false;
      has_column = true;
      continue;
    }
    current.push_back(c);
  }
  if (in_column) throw FormatError("unterminated placeholder in template \"" + std::string(pattern) + "\"");
  if (!current.empty()) t.segments_.push_back({false, std::move(current)});
  if (!has_column) throw FormatError("template \"" + std::string(pattern) + "\" has no {column} placeholder");
  return t;
}

std::vector<std::string> Template::columns() const {
  std::vector<std::string> out;
  for (const auto& s : segments_)
    if (s.is_column) out.push_back(s.text);
  return out;
}

std::string encode_for_template(std::string_view value, bool iri_safe) {
  return iri_safe ? percent_encode(value) : std::string(value);
}

std::string escape_template_literal(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '{' || c == '}' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::optional<std::string> expand_template(std::string_view pattern, const RowAccessor& row, bool iri_safe) {
  auto t = Template::parse(pattern);
  return t.expand([&](std::size_t, const std::string& column) { return row(column); }, iri_safe);
}

}  // namespace crosswalk::engine
