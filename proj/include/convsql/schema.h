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

#ifndef CONVSQL_SCHEMA_H_
#define CONVSQL_SCHEMA_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convsql {

struct Column {
  std::string name;
  std::optional<std::string> declared_type;
};

struct Table {
  std::string name;
  std::vector<Column> columns;

  // Case-insensitive column lookup.
  bool HasColumn(std::string_view column) const;
};

// One database: D = <T, C>. Names keep their original spelling; all
// lookups are case-insensitive.
struct DatabaseSchema {
  std::string db_id;
  std::vector<Table> tables;

  // Returns the table with the given (case-insensitive) name, or nullptr.
  const Table *FindTable(std::string_view name) const;
};

using SchemaCatalog = std::map<std::string, DatabaseSchema>;

// Reads a Spider-format tables.json catalog. The synthetic "*" column
// (table index -1) is dropped. Throws IoError or FormatError.
SchemaCatalog LoadSchemas(const std::string &path);

// Same as LoadSchemas, from an in-memory JSON document.
SchemaCatalog ParseSchemaCatalog(std::string_view json_text);

// Flat "t1 , c11 , c12 , t2 , c21" form, lowercase, catalog order.
std::string SerializeSchema(const DatabaseSchema &schema);

inline constexpr std::string_view kSchemaItemSeparator = " , ";

// Lowercases ASCII letters; other bytes pass through.
std::string ToLower(std::string_view text);

}  // namespace convsql

#endif  // CONVSQL_SCHEMA_H_
