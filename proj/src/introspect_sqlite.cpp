#include "dbdesc/errors.hpp"
#include "dbdesc/introspect.hpp"
#include "dbdesc/log.hpp"
#include "introspect_impl.hpp"

#include <algorithm>
#include <map>

namespace dbdesc::detail {

namespace {

std::string value_text(const Value& v) {
    if (v.is_text()) return v.as_text();
    if (v.is_int()) return std::to_string(v.as_int());
    return "";
}

} // namespace

SchemaSnapshot introspect_sqlite(Connector& connector, const std::string& db_id) {
    SchemaSnapshot snapshot;
    snapshot.db_id = db_id;
    snapshot.engine = Engine::sqlite;

    // sqlite_master scan order is creation order; sqlite_% names are the
    // engine's own bookkeeping tables
    QueryResult tables = connector.query(
        "SELECT name, sql FROM sqlite_master "
        "WHERE type = 'table' AND name NOT LIKE 'sqlite_%'");

    struct PendingFk {
        std::string from_table;
        std::string from_column;
        std::string to_table;
        std::string to_column; // empty when the DDL referenced the implicit PK
        int64_t seq = 0;
    };
    std::vector<PendingFk> pending_fks;

    for (const auto& row : tables.rows) {
        TableMeta table;
        table.name = value_text(row.at(0));
        std::string create_sql = value_text(row.at(1));
        DdlComments comments = parse_create_table_comments(create_sql);
        table.original_comment = comments.table_comment;

        std::string quoted = connector.quote_identifier(table.name);

        QueryResult cols = connector.query("PRAGMA table_info(" + quoted + ")");
        std::map<int64_t, std::string> pk_by_position;
        for (const auto& col_row : cols.rows) {
            ColumnMeta col;
            col.name = value_text(col_row.at(1));
            col.declared_type = value_text(col_row.at(2));
            col.normalized_type = normalize_type(Engine::sqlite, col.declared_type);
            col.nullable = col_row.at(3).is_int() ? col_row.at(3).as_int() == 0 : true;
            int64_t pk_pos = col_row.at(5).is_int() ? col_row.at(5).as_int() : 0;
            col.is_primary_key = pk_pos > 0;
            if (pk_pos > 0) pk_by_position[pk_pos] = col.name;
            auto comment_it = comments.column_comments.find(col.name);
            if (comment_it != comments.column_comments.end()) {
                col.original_comment = comment_it->second;
            }
            table.columns.push_back(std::move(col));
        }
        for (const auto& [pos, name] : pk_by_position) table.primary_key.push_back(name);

        // single-column unique indexes give declared uniqueness
        QueryResult indexes = connector.query("PRAGMA index_list(" + quoted + ")");
        for (const auto& idx_row : indexes.rows) {
            bool unique = idx_row.at(2).is_int() && idx_row.at(2).as_int() == 1;
            if (!unique) continue;
            std::string idx_name = value_text(idx_row.at(1));
            QueryResult idx_cols =
                connector.query("PRAGMA index_info(" + connector.quote_identifier(idx_name) + ")");
            if (idx_cols.rows.size() != 1) continue;
            std::string col_name = value_text(idx_cols.rows[0].at(2));
            for (auto& col : table.columns) {
                if (col.name == col_name) col.declared_unique = true;
            }
        }

        QueryResult fks = connector.query("PRAGMA foreign_key_list(" + quoted + ")");
        for (const auto& fk_row : fks.rows) {
            PendingFk fk;
            fk.from_table = table.name;
            fk.seq = fk_row.at(1).is_int() ? fk_row.at(1).as_int() : 0;
            fk.to_table = value_text(fk_row.at(2));
            fk.from_column = value_text(fk_row.at(3));
            if (!fk_row.at(4).is_null()) fk.to_column = value_text(fk_row.at(4));
            pending_fks.push_back(std::move(fk));
        }

        snapshot.tables.push_back(std::move(table));
    }

    // FKs that name no target column reference the parent's primary key
    for (auto& fk : pending_fks) {
        if (fk.to_column.empty()) {
            const TableMeta* parent = snapshot.find_table(fk.to_table);
            if (!parent || static_cast<size_t>(fk.seq) >= parent->primary_key.size()) {
                log::warn("skipping unresolvable foreign key " + fk.from_table + "." +
                          fk.from_column + " -> " + fk.to_table);
                continue;
            }
            fk.to_column = parent->primary_key[fk.seq];
        }
        if (!snapshot.find_table(fk.to_table)) {
            log::warn("skipping dangling foreign key " + fk.from_table + "." + fk.from_column +
                      " -> " + fk.to_table);
            continue;
        }
        snapshot.foreign_keys.push_back({fk.from_table, fk.from_column, fk.to_table, fk.to_column});
    }

    return snapshot;
}

} // namespace dbdesc::detail
