/*
 * Copyright 2026 The wfm Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wfm/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wfm/errors.hpp"

namespace wfm {

CsvDocument parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool quoted_field = false;
  size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    quoted_field = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || quoted_field) {
          throw IngestError("stray quote on line " + std::to_string(line));
        }
        in_quotes = true;
        quoted_field = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        throw IngestError("bare carriage return on line " + std::to_string(line));
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (quoted_field) throw IngestError("text after closing quote on line " + std::to_string(line));
        field.push_back(c);
    }
  }
  if (in_quotes) throw IngestError("unterminated quoted field");
  if (!field.empty() || !record.empty() || quoted_field) end_record();

  if (records.empty()) throw IngestError("CSV has no header row");
  CsvDocument doc;
  doc.header = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != doc.header.size()) {
      throw IngestError("row " + std::to_string(r - 1) + " has " + std::to_string(records[r].size()) +
                        " fields, header has " + std::to_string(doc.header.size()));
    }
    doc.rows.push_back(std::move(records[r]));
  }
  return doc;
}

namespace {

void write_field(std::string& out, const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) {
    out += f;
    return;
  }
  out.push_back('"');
  for (char c : f) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void write_record(std::string& out, const std::vector<std::string>& rec) {
  for (size_t i = 0; i < rec.size(); ++i) {
    if (i) out.push_back(',');
    write_field(out, rec[i]);
  }
  out.push_back('\n');
}

size_t column_index(const CsvDocument& doc, const std::string& name) {
  for (size_t i = 0; i < doc.header.size(); ++i) {
    if (doc.header[i] == name) return i;
  }
  throw IngestError("missing column '" + name + "'");
}

}  // namespace

std::string write_csv(const CsvDocument& doc) {
  std::string out;
  write_record(out, doc.header);
  for (const auto& r : doc.rows) write_record(out, r);
  return out;
}

IdTable table_from_csv(const CsvDocument& doc, const std::vector<std::string>& id_columns,
                       const std::vector<std::string>& payload_columns) {
  if (id_columns.empty()) throw IngestError("no id columns selected");
  std::vector<size_t> id_idx, pay_idx;
  for (const auto& c : id_columns) id_idx.push_back(column_index(doc, c));
  for (const auto& c : payload_columns) pay_idx.push_back(column_index(doc, c));

  IdTable t = make_table(id_columns, payload_columns);
  for (size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& rec = doc.rows[r];
    std::vector<Cell> cells;
    for (size_t i : id_idx) {
      if (rec[i].empty()) {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(rec[i]);
      }
    }
    std::vector<uint64_t> pays;
    for (size_t k = 0; k < pay_idx.size(); ++k) {
      const std::string& s = rec[pay_idx[k]];
      uint64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      auto where = "row " + std::to_string(r) + ", column '" + payload_columns[k] + "'";
      if (s.empty()) throw IngestError("missing payload at " + where);
      if (ec == std::errc::result_out_of_range) throw IngestError("payload overflow at " + where);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw IngestError("payload is not a non-negative integer at " + where);
      }
      pays.push_back(v);
    }
    t.add_row(std::move(cells), std::move(pays));
  }
  t.validate();
  return t;
}

CsvDocument table_to_csv(const IdTable& t) {
  CsvDocument doc;
  doc.header = t.id_names;
  doc.header.insert(doc.header.end(), t.payload_names.begin(), t.payload_names.end());
  for (size_t r = 0; r < t.rows(); ++r) {
    std::vector<std::string> rec;
    for (const auto& col : t.ids) rec.push_back(col[r].value_or(""));
    for (const auto& col : t.payloads) rec.push_back(std::to_string(col[r]));
    doc.rows.push_back(std::move(rec));
  }
  return doc;
}

IdTable ingest_csv(const std::string& path, const std::vector<std::string>& id_columns,
                   const std::vector<std::string>& payload_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return table_from_csv(parse_csv(ss.str()), id_columns, payload_columns);
  } catch (const IngestError& e) {
    throw IngestError(path + ": " + e.what());
  }
}

void emit_csv(const std::string& path, const IdTable& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write '" + path + "'");
  out << write_csv(table_to_csv(t));
  if (!out) throw IngestError("write to '" + path + "' failed");
}

}  // namespace wfm
