#include "dbdesc/schema.hpp"

#include "dbdesc/digest.hpp"
#include "dbdesc/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dbdesc {

std::string engine_name(Engine engine) {
    switch (engine) {
    case Engine::sqlite: return "sqlite";
    case Engine::mysql: return "mysql";
    case Engine::postgresql: return "postgresql";
    }
    return "unknown";
}

std::string normalized_type_name(NormalizedType type) {
    switch (type) {
    case NormalizedType::integer: return "integer";
    case NormalizedType::real: return "real";
    case NormalizedType::text: return "text";
    case NormalizedType::blob: return "blob";
    case NormalizedType::datetime: return "datetime";
    case NormalizedType::boolean: return "boolean";
    case NormalizedType::other: return "other";
    }
    return "other";
}

const ColumnMeta* TableMeta::find_column(const std::string& column_name) const {
    for (const auto& col : columns) {
        if (col.name == column_name) return &col;
    }
    return nullptr;
}

const TableMeta* SchemaSnapshot::find_table(const std::string& table_name) const {
    for (const auto& table : tables) {
        if (table.name == table_name) return &table;
    }
    return nullptr;
}

size_t SchemaSnapshot::column_count() const {
    size_t n = 0;
    for (const auto& table : tables) n += table.columns.size();
    return n;
}

void SchemaSnapshot::validate() const {
    std::set<std::string> table_names;
    for (const auto& table : tables) {
        if (!table_names.insert(table.name).second) {
            throw Error("duplicate table name in snapshot: " + table.name);
        }
        std::set<std::string> column_names;
        for (const auto& col : table.columns) {
            if (!column_names.insert(col.name).second) {
                throw Error("duplicate column name in " + table.name + ": " + col.name);
            }
            if (col.is_primary_key &&
                std::find(table.primary_key.begin(), table.primary_key.end(), col.name) ==
                    table.primary_key.end()) {
                throw Error("column " + table.name + "." + col.name +
                            " flagged primary key but missing from the key list");
            }
        }
        for (const auto& pk : table.primary_key) {
            if (!column_names.count(pk)) {
                throw Error("primary key names unknown column " + table.name + "." + pk);
            }
        }
    }
    for (const auto& fk : foreign_keys) {
        const TableMeta* from = find_table(fk.from_table);
        const TableMeta* to = find_table(fk.to_table);
        if (!from || !from->find_column(fk.from_column) || !to || !to->find_column(fk.to_column)) {
            throw Error("foreign key references unknown endpoint: " + fk.from_table + "." +
                        fk.from_column + " -> " + fk.to_table + "." + fk.to_column);
        }
    }
}

std::string snapshot_fingerprint(const SchemaSnapshot& snapshot) {
    std::ostringstream canon;
    canon << "db\x1f" << snapshot.db_id << "\x1f" << engine_name(snapshot.engine) << "\n";
    for (const auto& table : snapshot.tables) {
        canon << "table\x1f" << table.name << "\x1f"
              << table.original_comment.value_or("\x01none") << "\n";
        canon << "pk";
        for (const auto& pk : table.primary_key) canon << "\x1f" << pk;
        canon << "\n";
        for (const auto& col : table.columns) {
            canon << "col\x1f" << col.name << "\x1f" << col.declared_type << "\x1f"
                  << normalized_type_name(col.normalized_type) << "\x1f" << col.nullable << "\x1f"
                  << col.is_primary_key << "\x1f" << col.declared_unique << "\x1f"
                  << col.original_comment.value_or("\x01none") << "\n";
        }
    }
    std::vector<ForeignKey> fks = snapshot.foreign_keys;
    std::sort(fks.begin(), fks.end());
    for (const auto& fk : fks) {
        canon << "fk\x1f" << fk.from_table << "\x1f" << fk.from_column << "\x1f" << fk.to_table
              << "\x1f" << fk.to_column << "\n";
    }
    return sha256_hex(canon.str());
}

} // namespace dbdesc
