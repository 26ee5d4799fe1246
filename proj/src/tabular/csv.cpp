#include <algorithm>
#include <cctype>
#include <string>

#include "crosswalk/iri.hpp"
#include "crosswalk/tabular.hpp"

namespace crosswalk::tabular {

std::optional<Encoding> parse_encoding(std::string_view identifier) {
  std::string id;
  for (char c : identifier) {
    if (c == '-' || c == '_') continue;
    id.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (id == "utf8") return Encoding::utf8;
  if (id == "iso88591" || id == "latin1") return Encoding::latin1;
  if (id == "usascii" || id == "ascii") return Encoding::ascii;
  return std::nullopt;
}

CsvDialect::CsvDialect(char delimiter, char quote, std::string_view encoding, bool has_header)
    : delimiter_(delimiter), quote_(quote), encoding_(Encoding::utf8), has_header_(has_header) {
  if (delimiter == quote) throw FormatError("CSV delimiter and quote character must differ");
  if (delimiter == '\n' || delimiter == '\r' || quote == '\n' || quote == '\r')
    throw FormatError("CSV delimiter and quote may not be line breaks");
  auto enc = parse_encoding(encoding);
  if (!enc) throw FormatError("unsupported encoding \"" + std::string(encoding) + "\"");
  encoding_ = *enc;
}

namespace {

void validate_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      throw DecodeError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= bytes.size())
      throw DecodeError("truncated UTF-8 sequence at offset " + std::to_string(i));
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80)
        throw DecodeError("invalid UTF-8 continuation byte at offset " + std::to_string(i + k));
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t min_for_len[] = {0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw DecodeError("invalid UTF-8 code point at offset " + std::to_string(i));
    i += extra + 1;
  }
}

std::string decode(std::string_view bytes, Encoding encoding) {
  switch (encoding) {
    case Encoding::utf8: {
      if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
      validate_utf8(bytes);
      return std::string(bytes);
    }
    case Encoding::ascii: {
      for (std::size_t i = 0; i < bytes.size(); ++i)
        if (static_cast<unsigned char>(bytes[i]) >= 0x80)
          throw DecodeError("non-ASCII byte at offset " + std::to_string(i));
      return std::string(bytes);
    }
    case Encoding::latin1: {
      std::string out;
      out.reserve(bytes.size());
      for (char ch : bytes) {
        auto c = static_cast<unsigned char>(ch);
        if (c < 0x80) {
          out.push_back(ch);
        } else {
          out.push_back(static_cast<char>(0xC0 | (c >> 6)));
          out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
      }
      return out;
    }
  }
  return std::string(bytes);
}

std::string encode(const std::string& text, Encoding encoding) {
  switch (encoding) {
    case Encoding::utf8:
      return text;
    case Encoding::ascii:
      for (char c : text)
        if (static_cast<unsigned char>(c) >= 0x80)
          throw DecodeError("text is not representable in US-ASCII");
      return text;
    case Encoding::latin1: {
      std::string out;
      for (std::size_t i = 0; i < text.size(); ++i) {
        auto c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
          out.push_back(text[i]);
        } else if ((c == 0xC2 || c == 0xC3) && i + 1 < text.size()) {
          out.push_back(static_cast<char>(((c & 0x03) << 6) |
                                          (static_cast<unsigned char>(text[i + 1]) & 0x3F)));
          ++i;
        } else {
          throw DecodeError("text is not representable in ISO-8859-1");
        }
      }
      return out;
    }
  }
  return text;
}

struct Record {
  Row fields;
};

// Splits the decoded text into records. The text after the final line break
// is not a record when empty.
std::vector<Record> tokenize(const std::string& text, char delimiter, char quote) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool field_quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto end_field = [&] {
    if (field_quoted || !field.empty())
      current.fields.emplace_back(std::move(field));
    else
      current.fields.emplace_back(std::nullopt);
    field.clear();
    field_quoted = false;
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = Record{};
  };

  while (i < n) {
    char c = text[i];
    if (c == quote && !field_started) {
      field_started = true;
      field_quoted = true;
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == quote) {
          if (i + 1 < n && text[i + 1] == quote) {
            field.push_back(quote);
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(text[i++]);
        }
      }
      if (!closed)
        throw CsvSyntaxError("unterminated quoted field in record " + std::to_string(records.size()));
      if (i < n && text[i] != delimiter && text[i] != '\n' && text[i] != '\r')
        throw CsvSyntaxError("unexpected character after closing quote in record " +
                             std::to_string(records.size()));
      continue;
    }
    if (c == delimiter) {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      ++i;
      continue;
    }
    field_started = true;
    field.push_back(c);
    ++i;
  }
  if (field_started || !current.fields.empty()) end_record();
  return records;
}

bool is_blank_record(const Record& r) {
  return r.fields.size() == 1 && !r.fields[0].has_value();
}

}  // namespace

TabularDataset::TabularDataset(std::vector<std::string> header, std::vector<Row> rows,
                               std::string source_id)
    : header_(std::move(header)), rows_(std::move(rows)), source_id_(std::move(source_id)) {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    auto key = normalize_name(header_[i]);
    if (key.empty()) throw CsvSyntaxError("column " + std::to_string(i) + " has an empty name");
    if (!index_.emplace(std::move(key), i).second) throw DuplicateColumnError(header_[i]);
  }
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (rows_[r].size() != header_.size()) throw RaggedRowError(r, header_.size(), rows_[r].size());
}

std::optional<std::size_t> TabularDataset::find_column(std::string_view name) const {
  auto it = index_.find(normalize_name(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TabularDataset::column_index(std::string_view name) const {
  auto idx = find_column(name);
  if (!idx) throw UnknownColumnError(std::string(name));
  return *idx;
}

TabularDataset load_csv(std::string_view bytes, const CsvDialect& dialect, std::string source_id) {
  std::string text = decode(bytes, dialect.encoding());
  if (text.empty()) throw EmptyInputError();
  auto records = tokenize(text, dialect.delimiter(), dialect.quote());
  if (std::all_of(records.begin(), records.end(), is_blank_record)) throw EmptyInputError();

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (dialect.has_header()) {
    for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
      const auto& f = records[0].fields[i];
      if (!f || trim(*f).empty())
        throw CsvSyntaxError("header column " + std::to_string(i) + " has an empty name");
      header.push_back(*f);
    }
    first_data = 1;
  } else {
    for (std::size_t i = 0; i < records[0].fields.size(); ++i)
      header.push_back("column" + std::to_string(i + 1));
  }

  // A blank line is skipped unless the table has a single column, where it
  // is a row whose only cell is absent.
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (std::size_t r = first_data; r < records.size(); ++r) {
    if (header.size() > 1 && is_blank_record(records[r])) continue;
    if (records[r].fields.size() != header.size())
      throw RaggedRowError(rows.size(), header.size(), records[r].fields.size());
    rows.push_back(std::move(records[r].fields));
  }
  return TabularDataset(std::move(header), std::move(rows), std::move(source_id));
}

namespace {

bool needs_quotes(const std::string& value, const CsvDialect& d) {
  if (value.empty()) return true;
  return value.find(d.delimiter()) != std::string::npos || value.find(d.quote()) != std::string::npos ||
         value.find('\n') != std::string::npos || value.find('\r') != std::string::npos;
}

void append_field(std::string& out, const Cell& cell, const CsvDialect& d) {
  if (!cell) return;
  if (!needs_quotes(*cell, d)) {
    out += *cell;
    return;
  }
  out.push_back(d.quote());
  for (char c : *cell) {
    if (c == d.quote()) out.push_back(d.quote());
    out.push_back(c);
  }
  out.push_back(d.quote());
}

}  // namespace

std::string write_csv(const TabularDataset& dataset, const CsvDialect& dialect) {
  std::string out;
  auto append_row = [&](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(dialect.delimiter());
      append_field(out, row[i], dialect);
    }
    out += "\r\n";
  };
  if (dialect.has_header()) {
    Row header(dataset.header().begin(), dataset.header().end());
    append_row(header);
  }
  for (const auto& row : dataset.rows()) append_row(row);
  return encode(out, dialect.encoding());
}

std::optional<std::string> cell(const TabularDataset& dataset, std::size_t row, std::string_view column) {
  auto col = dataset.column_index(column);
  if (row >= dataset.row_count())
    throw std::out_of_range("row " + std::to_string(row) + " out of range");
  return dataset.rows()[row][col];
}

std::vector<std::string> split_multivalued(std::string_view value, char delimiter) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto pos = value.find(delimiter, start);
    auto piece = trim(value.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) parts.push_back(std::move(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace crosswalk::tabular
