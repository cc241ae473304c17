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

#ifndef WFM_TABLE_HPP_
#define WFM_TABLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wfm {

// Ids starting with this prefix are generated internally (missing-cell
// tokens, dummies, fillers) and never accepted from input.
inline constexpr std::string_view kReservedPrefix = "\xe2\x9f\x82";  // U+27C2

using Cell = std::optional<std::string>;

// Identifier columns in priority order plus optional payload columns.
// Rows are indexed in ingestion order starting at 0.
struct IdTable {
  std::vector<std::string> id_names;
  std::vector<std::vector<Cell>> ids;  // [column][row]
  std::vector<std::string> payload_names;
  std::vector<std::vector<uint64_t>> payloads;  // [column][row]

  size_t rows() const { return ids.empty() ? 0 : ids.front().size(); }
  size_t num_id_columns() const { return ids.size(); }
  size_t num_payload_columns() const { return payloads.size(); }

  // Appends a row; cell and payload counts must match the column counts.
  void add_row(std::vector<Cell> id_cells, std::vector<uint64_t> payload_cells = {});

  // Throws IngestError for: no id columns, ragged columns, duplicate ids in
  // a column, reserved prefix, empty id strings, payloads above 2^32 - 1.
  void validate() const;

  bool operator==(const IdTable&) const = default;
};

// Creates an empty table with the given column names.
IdTable make_table(std::vector<std::string> id_names, std::vector<std::string> payload_names = {});

}  // namespace wfm

#endif  // WFM_TABLE_HPP_
