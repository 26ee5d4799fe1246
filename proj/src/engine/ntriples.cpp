#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "crosswalk/engine.hpp"

namespace crosswalk::engine {

namespace {

void append_string(std::string& out, std::string_view text) {
  out.push_back('"');
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

void append_term(std::string& out, const rdf::Term& term) {
  if (const auto* iri = std::get_if<rdf::Iri>(&term)) {
    out += '<';
    out += iri->value;
    out += '>';
  } else if (const auto* b = std::get_if<rdf::BlankNode>(&term)) {
    out += "_:";
    out += b->label;
  } else {
    const auto& l = std::get<rdf::Literal>(term);
    append_string(out, l.lexical);
    if (l.language) {
      out += '@';
      out += *l.language;
    } else if (l.datatype != xsd_string) {
      out += "^^<";
      out += l.datatype;
      out += '>';
    }
  }
}

}  // namespace

std::string format_term(const rdf::Term& term) {
  std::string out;
  append_term(out, term);
  return out;
}

std::string format_ntriple(const rdf::Triple& t) {
  std::string out;
  append_term(out, rdf::to_term(t.subject));
  out += ' ';
  append_term(out, t.predicate);
  out += ' ';
  append_term(out, t.object);
  out += " .";
  return out;
}

std::string serialize_ntriples(const std::vector<rdf::Triple>& triples, bool stable) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) lines.push_back(format_ntriple(t));
  if (stable) {
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  } else {
    std::unordered_set<std::string_view> seen;
    std::vector<std::string> kept;
    for (auto& l : lines)
      if (seen.insert(l).second) kept.push_back(l);
    lines = std::move(kept);
  }
  std::size_t size = 0;
  for (const auto& l : lines) size += l.size() + 1;
  std::string out;
  out.reserve(size);
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace crosswalk::engine
