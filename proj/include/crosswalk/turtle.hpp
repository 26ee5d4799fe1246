#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/error.hpp"

namespace crosswalk::turtle {

class TurtleSyntaxError : public Error {
 public:
  TurtleSyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error("Turtle syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Node {
  enum class Kind { iri, blank, literal };
  Kind kind = Kind::iri;
  std::string value;     // IRI (relative IRIs kept verbatim when no base), blank label, or lexical form
  std::string datatype;  // explicit datatype IRI, empty when none was written
  std::string language;

  bool operator==(const Node&) const = default;
  auto operator<=>(const Node&) const = default;
};

struct Statement {
  Node subject;
  Node predicate;
  Node object;
};

struct Document {
  std::vector<Statement> statements;  // in document order
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> prefix_order;
};

// Turtle 1.1: @prefix/PREFIX, @base/BASE, IRIs, prefixed names, blank node
// labels and property lists, collections, all string forms, numbers and
// booleans, "a". Numbers and booleans become literals typed with xsd.
Document parse(std::string_view text);

}  // namespace crosswalk::turtle
