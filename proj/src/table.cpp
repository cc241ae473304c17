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

#include "wfm/table.hpp"

#include <unordered_map>

#include "wfm/ahe.hpp"
#include "wfm/errors.hpp"

namespace wfm {

IdTable make_table(std::vector<std::string> id_names, std::vector<std::string> payload_names) {
  IdTable t;
  t.ids.resize(id_names.size());
  t.payloads.resize(payload_names.size());
  t.id_names = std::move(id_names);
  t.payload_names = std::move(payload_names);
  return t;
}

void IdTable::add_row(std::vector<Cell> id_cells, std::vector<uint64_t> payload_cells) {
  if (id_cells.size() != ids.size() || payload_cells.size() != payloads.size()) {
    throw IngestError("row has " + std::to_string(id_cells.size()) + " ids and " +
                      std::to_string(payload_cells.size()) + " payloads, table expects " +
                      std::to_string(ids.size()) + " and " + std::to_string(payloads.size()));
  }
  for (size_t c = 0; c < ids.size(); ++c) ids[c].push_back(std::move(id_cells[c]));
  for (size_t c = 0; c < payloads.size(); ++c) payloads[c].push_back(payload_cells[c]);
}

void IdTable::validate() const {
  if (ids.empty()) throw IngestError("table needs at least one id column");
  if (id_names.size() != ids.size() || payload_names.size() != payloads.size()) {
    throw IngestError("column names do not match column count");
  }
  const size_t n = rows();
  for (size_t c = 0; c < ids.size(); ++c) {
    if (ids[c].size() != n) throw IngestError("id column '" + id_names[c] + "' is ragged");
    std::unordered_map<std::string_view, size_t> seen;
    seen.reserve(n);
    for (size_t r = 0; r < n; ++r) {
      if (!ids[c][r]) continue;
      const std::string& v = *ids[c][r];
      auto where = "row " + std::to_string(r) + ", column '" + id_names[c] + "'";
      if (v.empty()) throw IngestError("empty id at " + where);
      if (v.starts_with(kReservedPrefix)) throw IngestError("reserved id prefix at " + where);
      auto [it, fresh] = seen.emplace(v, r);
      if (!fresh) {
        throw IngestError("duplicate id '" + v + "' at " + where + " (first seen at row " +
                          std::to_string(it->second) + ")");
      }
    }
  }
  for (size_t c = 0; c < payloads.size(); ++c) {
    if (payloads[c].size() != n) throw IngestError("payload column '" + payload_names[c] + "' is ragged");
    for (size_t r = 0; r < n; ++r) {
      if (payloads[c][r] > kMaxPayload) {
        throw IngestError("payload above 2^32-1 at row " + std::to_string(r) + ", column '" +
                          payload_names[c] + "'");
      }
    }
  }
}

}  // namespace wfm
