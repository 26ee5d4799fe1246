#include "crosswalk/turtle.hpp"

#include <cctype>

#include "crosswalk/iri.hpp"

namespace crosswalk::turtle {

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_pn_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

std::string resolve(const std::string& base, const std::string& rel) {
  if (base.empty() || is_absolute_iri(rel)) return rel;
  if (rel.empty()) return base;
  auto without_fragment = base.substr(0, base.find('#'));
  if (rel[0] == '#') return without_fragment + rel;
  auto scheme_end = base.find(':');
  if (rel.size() > 1 && rel[0] == '/' && rel[1] == '/') return base.substr(0, scheme_end + 1) + rel;
  if (rel[0] == '/') {
    auto authority = base.find("//", scheme_end);
    if (authority != std::string::npos) {
      auto path = base.find('/', authority + 2);
      return base.substr(0, path == std::string::npos ? base.size() : path) + rel;
    }
    return base.substr(0, scheme_end + 1) + rel;
  }
  auto without_query = without_fragment.substr(0, without_fragment.find('?'));
  auto slash = without_query.rfind('/');
  return (slash == std::string::npos ? without_query : without_query.substr(0, slash + 1)) + rel;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw TurtleSyntaxError(message, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  char get() {
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  bool keyword_ahead(std::string_view kw, bool case_insensitive) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = text_[pos_ + i];
      char b = kw[i];
      if (case_insensitive ? std::toupper(static_cast<unsigned char>(a)) != std::toupper(static_cast<unsigned char>(b))
                           : a != b)
        return false;
    }
    char next = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : ' ';
    return !is_pn_char(next) && next != ':';
  }

  void statement() {
    if (peek() == '@') {
      if (keyword_ahead("@prefix", false)) {
        advance(7);
        prefix_decl();
        expect('.');
        return;
      }
      if (keyword_ahead("@base", false)) {
        advance(5);
        skip_ws();
        base_ = iri_ref();
        expect('.');
        return;
      }
      fail("unknown directive");
    }
    if (keyword_ahead("PREFIX", true)) {
      advance(6);
      prefix_decl();
      return;
    }
    if (keyword_ahead("BASE", true)) {
      advance(4);
      skip_ws();
      base_ = iri_ref();
      return;
    }
    triples();
    expect('.');
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) get();
  }

  void prefix_decl() {
    skip_ws();
    std::string label;
    while (!at_end() && peek() != ':') {
      if (!is_pn_char(peek()) && peek() != '.') fail("invalid prefix label");
      label.push_back(get());
    }
    if (at_end()) fail("expected ':' in prefix declaration");
    get();
    skip_ws();
    auto iri = iri_ref();
    if (!doc_.prefixes.count(label)) doc_.prefix_order.push_back(label);
    doc_.prefixes[label] = iri;
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected '<'");
    get();
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = get();
        if (e == 'u' || e == 'U') {
          append_utf8(out, hex_escape(e == 'u' ? 4 : 8));
          continue;
        }
        fail("invalid escape in IRI");
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`')
        fail("invalid character in IRI");
      out.push_back(c);
    }
    return resolve(base_, out);
  }

  char32_t hex_escape(int digits) {
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = get();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("invalid hex escape");
      cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(h)) ? h - '0'
                                                                                       : std::tolower(h) - 'a' + 10);
    }
    return cp;
  }

  Node prefixed_name() {
    std::string label;
    while (!at_end() && peek() != ':' && (is_pn_char(peek()) || peek() == '.')) label.push_back(get());
    if (peek() != ':') fail("expected prefixed name");
    get();
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (is_pn_char(c) || c == ':') {
        local.push_back(get());
      } else if (c == '.') {
        // A dot ends the local name unless more name characters follow.
        char n = peek(1);
        if (is_pn_char(n) || n == ':' || n == '%' || n == '\\' || n == '.') {
          local.push_back(get());
        } else {
          break;
        }
      } else if (c == '%') {
        local.push_back(get());
        for (int i = 0; i < 2; ++i) {
          if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid percent escape");
          local.push_back(get());
        }
      } else if (c == '\\') {
        get();
        local.push_back(get());
      } else {
        break;
      }
    }
    if (!local.empty() && local.back() == '.') fail("local name may not end with '.'");
    auto it = doc_.prefixes.find(label);
    if (it == doc_.prefixes.end()) fail("undeclared prefix \"" + label + ":\"");
    return {Node::Kind::iri, it->second + local, {}, {}};
  }

  Node iri() {
    skip_ws();
    if (peek() == '<') return {Node::Kind::iri, iri_ref(), {}, {}};
    return prefixed_name();
  }

  Node blank_label() {
    get();  // _
    if (get() != ':') fail("expected ':' after '_'");
    std::string label;
    while (!at_end() && (is_pn_char(peek()) || (peek() == '.' && is_pn_char(peek(1))))) label.push_back(get());
    if (label.empty()) fail("empty blank node label");
    return {Node::Kind::blank, "u_" + label, {}, {}};
  }

  Node fresh_blank() { return {Node::Kind::blank, "anon#" + std::to_string(anon_++), {}, {}}; }

  void emit(const Node& s, const Node& p, const Node& o) { doc_.statements.push_back({s, p, o}); }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Node subject = blank_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
      return;
    }
    Node subject = subject_term();
    predicate_object_list(subject);
  }

  Node subject_term() {
    skip_ws();
    char c = peek();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    return iri();
  }

  Node verb() {
    skip_ws();
    if (peek() == 'a' && !is_pn_char(peek(1)) && peek(1) != ':') {
      get();
      return {Node::Kind::iri, std::string(rdf_type), {}, {}};
    }
    return iri();
  }

  void predicate_object_list(const Node& subject) {
    while (true) {
      Node p = verb();
      object_list(subject, p);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      char c = peek();
      if (c == '.' || c == ']' || at_end()) return;
    }
  }

  void object_list(const Node& s, const Node& p) {
    while (true) {
      Node o = object();
      emit(s, p, o);
      skip_ws();
      if (peek() != ',') return;
      get();
    }
  }

  Node blank_property_list() {
    get();  // [
    Node node = fresh_blank();
    skip_ws();
    if (peek() == ']') {
      get();
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Node collection() {
    get();  // (
    std::vector<Node> items;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        get();
        break;
      }
      items.push_back(object());
    }
    Node nil{Node::Kind::iri, std::string(ns::rdf) + "nil", {}, {}};
    if (items.empty()) return nil;
    Node first_ = {Node::Kind::iri, std::string(ns::rdf) + "first", {}, {}};
    Node rest_ = {Node::Kind::iri, std::string(ns::rdf) + "rest", {}, {}};
    Node head = fresh_blank();
    Node cur = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      emit(cur, first_, items[i]);
      Node next = i + 1 < items.size() ? fresh_blank() : nil;
      emit(cur, rest_, next);
      cur = next;
    }
    return head;
  }

  Node object() {
    skip_ws();
    char c = peek();
    if (c == '<') return iri();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_property_list();
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return string_literal();
    if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) return numeric_literal();
    if (keyword_ahead("true", false) || keyword_ahead("false", false)) {
      bool t = peek() == 't';
      advance(t ? 4 : 5);
      return {Node::Kind::literal, t ? "true" : "false", std::string(ns::xsd) + "boolean", {}};
    }
    return prefixed_name();
  }

  Node numeric_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex.push_back(get());
    bool digits = false, dot = false, exp = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        lex.push_back(get());
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        lex.push_back(get());
      } else if ((c == 'e' || c == 'E') && !exp && digits) {
        exp = true;
        lex.push_back(get());
        if (peek() == '+' || peek() == '-') lex.push_back(get());
      } else {
        break;
      }
    }
    if (!digits) fail("invalid numeric literal");
    std::string type = exp ? "double" : dot ? "decimal" : "integer";
    return {Node::Kind::literal, lex, std::string(ns::xsd) + type, {}};
  }

  Node string_literal() {
    char q = get();
    bool long_form = peek() == q && peek(1) == q;
    if (long_form) {
      get();
      get();
    } else if (peek() == q) {
      get();
      return literal_suffix("");
    }
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = peek();
      if (long_form && c == q && peek(1) == q && peek(2) == q) {
        // Up to two extra quotes may close the string.
        advance(3);
        while (peek() == q) {
          out.push_back(q);
          get();
        }
        break;
      }
      if (!long_form && c == q) {
        get();
        break;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("line break in short string");
      get();
      if (c == '\\') {
        char e = get();
        switch (e) {
          case 't': out.push_back('\t'); break;
          case 'b': out.push_back('\b'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 'f': out.push_back('\f'); break;
          case '"': out.push_back('"'); break;
          case '\'': out.push_back('\''); break;
          case '\\': out.push_back('\\'); break;
          case 'u': append_utf8(out, hex_escape(4)); break;
          case 'U': append_utf8(out, hex_escape(8)); break;
          default: fail(std::string("invalid string escape \\") + e);
        }
        continue;
      }
      out.push_back(c);
    }
    return literal_suffix(std::move(out));
  }

  Node literal_suffix(std::string lexical) {
    Node n{Node::Kind::literal, std::move(lexical), {}, {}};
    if (peek() == '@') {
      get();
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) n.language.push_back(get());
      if (n.language.empty()) fail("empty language tag");
    } else if (peek() == '^' && peek(1) == '^') {
      advance(2);
      n.datatype = iri().value;
    }
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::size_t anon_ = 0;
  std::string base_;
  Document doc_;
};

}  // namespace

Document parse(std::string_view text) { return Parser(text).run(); }

}  // namespace crosswalk::turtle
