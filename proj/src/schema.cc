// Copyright 2026 The convsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convsql/schema.h"

#include <fstream>
#include <set>
#include <sstream>

#include "convsql/errors.h"
#include "json.hpp"

namespace convsql {

using json = nlohmann::json;

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool Table::HasColumn(std::string_view column) const {
  const std::string wanted = ToLower(column);
  for (const Column &c : columns) {
    if (ToLower(c.name) == wanted) return true;
  }
  return false;
}

const Table *DatabaseSchema::FindTable(std::string_view name) const {
  const std::string wanted = ToLower(name);
  for (const Table &t : tables) {
    if (ToLower(t.name) == wanted) return &t;
  }
  return nullptr;
}

namespace {

const json &Field(const json &entry, const char *key,
                  const std::string &db_id) {
  auto it = entry.find(key);
  if (it == entry.end()) {
    throw FormatError(db_id, std::string("missing field '") + key + "'");
  }
  return *it;
}

DatabaseSchema ParseEntry(const json &entry) {
  if (!entry.is_object()) throw FormatError("", "catalog entry is not an object");
  const json &db_id_field = Field(entry, "db_id", "");
  if (!db_id_field.is_string()) throw FormatError("", "db_id is not a string");
  DatabaseSchema schema;
  schema.db_id = db_id_field.get<std::string>();
  const std::string &db = schema.db_id;

  const json &table_names = Field(entry, "table_names_original", db);
  const json &column_names = Field(entry, "column_names_original", db);
  if (!table_names.is_array() || !column_names.is_array()) {
    throw FormatError(db, "table/column name lists must be arrays");
  }
  std::set<std::string> seen_tables;
  for (const json &name : table_names) {
    if (!name.is_string() || name.get<std::string>().empty()) {
      throw FormatError(db, "table name must be a non-empty string");
    }
    if (!seen_tables.insert(ToLower(name.get<std::string>())).second) {
      throw FormatError(db, "duplicate table '" + name.get<std::string>() + "'");
    }
    schema.tables.push_back(Table{name.get<std::string>(), {}});
  }
  if (schema.tables.empty()) throw FormatError(db, "database has no tables");

  const json *column_types = nullptr;
  if (auto it = entry.find("column_types");
      it != entry.end() && it->is_array() && it->size() == column_names.size()) {
    column_types = &*it;
  }

  const long n_tables = static_cast<long>(schema.tables.size());
  for (size_t i = 0; i < column_names.size(); ++i) {
    const json &pair = column_names[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_string()) {
      throw FormatError(db, "column entry " + std::to_string(i) +
                                " is not a [table_index, name] pair");
    }
    const long table_index = pair[0].get<long>();
    const std::string name = pair[1].get<std::string>();
    if (table_index == -1) continue;  // the synthetic "*" column
    if (table_index < 0 || table_index >= n_tables) {
      throw FormatError(db, "column '" + name + "' references table index " +
                                std::to_string(table_index));
    }
    if (name.empty()) throw FormatError(db, "empty column name");
    Table &table = schema.tables[static_cast<size_t>(table_index)];
    if (table.HasColumn(name)) {
      throw FormatError(db, "duplicate column '" + name + "' in table '" +
                                table.name + "'");
    }
    Column column{name, std::nullopt};
    if (column_types != nullptr && (*column_types)[i].is_string()) {
      column.declared_type = (*column_types)[i].get<std::string>();
    }
    table.columns.push_back(std::move(column));
  }
  for (const Table &t : schema.tables) {
    if (t.columns.empty()) {
      throw FormatError(db, "table '" + t.name + "' has no columns");
    }
  }
  return schema;
}

}  // namespace

SchemaCatalog ParseSchemaCatalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw FormatError("", e.what());
  }
  if (!doc.is_array()) throw FormatError("", "catalog root must be an array");
  SchemaCatalog catalog;
  for (const json &entry : doc) {
    DatabaseSchema schema = ParseEntry(entry);
    std::string key = schema.db_id;
    if (!catalog.emplace(key, std::move(schema)).second) {
      throw FormatError(key, "duplicate db_id");
    }
  }
  return catalog;
}

SchemaCatalog LoadSchemas(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open schema catalog '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSchemaCatalog(buffer.str());
}

std::string SerializeSchema(const DatabaseSchema &schema) {
  std::string out;
  for (const Table &table : schema.tables) {
    if (!out.empty()) out += kSchemaItemSeparator;
    out += ToLower(table.name);
    for (const Column &column : table.columns) {
      out += kSchemaItemSeparator;
      out += ToLower(column.name);
    }
  }
  return out;
}

}  // namespace convsql
