#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crosswalk/error.hpp"

namespace crosswalk::tabular {

class DecodeError : public Error {
 public:
  using Error::Error;
};

class RaggedRowError : public Error {
 public:
  RaggedRowError(std::size_t row, std::size_t expected, std::size_t actual)
      : Error("row " + std::to_string(row) + " has " + std::to_string(actual) +
              " fields, header has " + std::to_string(expected)),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("CSV input is empty") {}
};

// Unterminated quotes, stray text after a closing quote, blank header names.
class CsvSyntaxError : public Error {
 public:
  using Error::Error;
};

class DuplicateColumnError : public Error {
 public:
  explicit DuplicateColumnError(const std::string& name)
      : Error("duplicate column \"" + name + "\" (names compare case- and whitespace-insensitively)") {}
};

enum class Encoding { utf8, latin1, ascii };

class CsvDialect {
 public:
  // Accepted identifiers: UTF-8/utf8, ISO-8859-1/latin1, US-ASCII/ascii.
  explicit CsvDialect(char delimiter = ',', char quote = '"', std::string_view encoding = "UTF-8",
                      bool has_header = true);

  char delimiter() const noexcept { return delimiter_; }
  char quote() const noexcept { return quote_; }
  Encoding encoding() const noexcept { return encoding_; }
  bool has_header() const noexcept { return has_header_; }

 private:
  char delimiter_;
  char quote_;
  Encoding encoding_;
  bool has_header_;
};

std::optional<Encoding> parse_encoding(std::string_view identifier);

using Cell = std::optional<std::string>;
using Row = std::vector<Cell>;

class TabularDataset {
 public:
  TabularDataset(std::vector<std::string> header, std::vector<Row> rows, std::string source_id);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const std::string& source_id() const noexcept { return source_id_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return header_.size(); }

  // Position of a column, compared after normalize_name().
  std::optional<std::size_t> find_column(std::string_view name) const;
  std::size_t column_index(std::string_view name) const;  // throws UnknownColumnError

  bool operator==(const TabularDataset& other) const {
    return header_ == other.header_ && rows_ == other.rows_ && source_id_ == other.source_id_;
  }

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
  std::string source_id_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads RFC 4180 CSV. An empty unquoted field becomes an absent cell, a
// quoted empty field ("") an empty string. Without a header the columns are
// named "column1", "column2", ...
TabularDataset load_csv(std::string_view bytes, const CsvDialect& dialect, std::string source_id);

// Inverse of load_csv for the same dialect; ends every record with CRLF.
std::string write_csv(const TabularDataset& dataset, const CsvDialect& dialect);

// Throws UnknownColumnError; row must be < row_count().
std::optional<std::string> cell(const TabularDataset& dataset, std::size_t row, std::string_view column);

std::vector<std::string> split_multivalued(std::string_view value, char delimiter = ';');

// ---------------------------------------------------------------------------
// Schemas

struct ColumnSpec {
  std::string name;
  bool required = false;
  bool multivalued = false;
  std::optional<char> value_delimiter;  // defaults to ';' when multivalued

  char delimiter() const noexcept { return value_delimiter.value_or(';'); }
};

class TableSchema {
 public:
  TableSchema(std::string id, std::vector<ColumnSpec> columns, std::string notes = {});

  const std::string& id() const noexcept { return id_; }
  const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }
  const std::string& notes() const noexcept { return notes_; }
  const ColumnSpec* find(std::string_view name) const;

 private:
  std::string id_;
  std::vector<ColumnSpec> columns_;
  std::string notes_;
};

// {"id": ..., "notes": ..., "columns": [{"name", "required", "multivalued", "value_delimiter"}]}
TableSchema parse_schema_json(std::string_view text, Diagnostics* diagnostics = nullptr);
std::string schema_to_json(const TableSchema& schema);

enum class Severity { error, warning };

struct Issue {
  Severity severity;
  std::optional<std::size_t> row;
  std::optional<std::string> column;
  std::string message;

  bool operator==(const Issue&) const = default;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const noexcept;
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
  bool operator==(const ValidationReport&) const = default;
};

// Column-level issues come first (missing required columns in schema order,
// then unknown columns in header order), followed by absent required cells
// ordered by row and then schema column order.
ValidationReport validate_schema(const TabularDataset& dataset, const TableSchema& schema);

std::string report_to_text(const ValidationReport& report);
std::string report_to_json(const ValidationReport& report);

}  // namespace crosswalk::tabular
