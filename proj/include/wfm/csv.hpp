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

#ifndef WFM_CSV_HPP_
#define WFM_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "wfm/table.hpp"

namespace wfm {

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-separated with double-quote escaping. Accepts LF or CRLF line ends
// and quoted fields spanning lines. Every row must match the header width.
CsvDocument parse_csv(std::string_view text);
std::string write_csv(const CsvDocument& doc);

// Builds a validated table from the named columns; an empty id cell is a
// missing id. Errors name the data row (0-based) and column.
IdTable table_from_csv(const CsvDocument& doc, const std::vector<std::string>& id_columns,
                       const std::vector<std::string>& payload_columns = {});
CsvDocument table_to_csv(const IdTable& t);

IdTable ingest_csv(const std::string& path, const std::vector<std::string>& id_columns,
                   const std::vector<std::string>& payload_columns = {});
void emit_csv(const std::string& path, const IdTable& t);

}  // namespace wfm

#endif  // WFM_CSV_HPP_
