#include "crosswalk/iri.hpp"

#include <cctype>

namespace crosswalk {

namespace {

bool is_alpha(unsigned char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

bool is_absolute_iri(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!is_alpha(static_cast<unsigned char>(text[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    auto c = static_cast<unsigned char>(text[i]);
    if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

std::string percent_encode(std::string_view text) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_alpha(c) || is_digit(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0x0F]);
    }
  }
  return out;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (char ch : name) {
    auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && is_space(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

bool is_language_tag(std::string_view tag) {
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t run = 0;
  while (i < tag.size() && is_alpha(static_cast<unsigned char>(tag[i]))) {
    ++i;
    ++run;
  }
  if (run == 0 || run > 8) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    run = 0;
    while (i < tag.size() && (is_alpha(static_cast<unsigned char>(tag[i])) ||
                              is_digit(static_cast<unsigned char>(tag[i])))) {
      ++i;
      ++run;
    }
    if (run == 0 || run > 8) return false;
  }
  return true;
}

}  // namespace crosswalk
