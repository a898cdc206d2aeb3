// information_schema readers for the network engines. These run over the
// Connector interface, so they are exercised in tests with scripted
// catalog results even when the client drivers are not compiled in.

#include "dbdesc/errors.hpp"
#include "dbdesc/introspect.hpp"
#include "introspect_impl.hpp"

#include <map>

namespace dbdesc::detail {

namespace {

std::string value_text(const Value& v) {
    if (v.is_text()) return v.as_text();
    if (v.is_int()) return std::to_string(v.as_int());
    return "";
}

std::optional<std::string> optional_text(const Value& v) {
    if (v.is_null()) return std::nullopt;
    std::string s = value_text(v);
    if (s.empty()) return std::nullopt;
    return s;
}

std::string escape_literal(const std::string& s) {
    std::string out;
    for (char c : s) {
        out.push_back(c);
        if (c == '\'') out.push_back('\'');
    }
    return out;
}

} // namespace

SchemaSnapshot introspect_mysql(Connector& connector, const std::string& db_id) {
    SchemaSnapshot snapshot;
    snapshot.db_id = db_id;
    snapshot.engine = Engine::mysql;

    QueryResult tables = connector.query(
        "SELECT table_name, table_comment FROM information_schema.tables "
        "WHERE table_schema = DATABASE() AND table_type = 'BASE TABLE' "
        "ORDER BY table_name");

    for (const auto& table_row : tables.rows) {
        TableMeta table;
        table.name = value_text(table_row.at(0));
        table.original_comment = optional_text(table_row.at(1));

        std::string name_literal = "'" + escape_literal(table.name) + "'";
        QueryResult cols = connector.query(
            "SELECT column_name, column_type, is_nullable, column_key, column_comment "
            "FROM information_schema.columns "
            "WHERE table_schema = DATABASE() AND table_name = " + name_literal +
            " ORDER BY ordinal_position");
        for (const auto& col_row : cols.rows) {
            ColumnMeta col;
            col.name = value_text(col_row.at(0));
            col.declared_type = value_text(col_row.at(1));
            col.normalized_type = normalize_type(Engine::mysql, col.declared_type);
            col.nullable = value_text(col_row.at(2)) == "YES";
            std::string key = value_text(col_row.at(3));
            col.is_primary_key = key == "PRI";
            col.declared_unique = key == "UNI";
            col.original_comment = optional_text(col_row.at(4));
            table.columns.push_back(std::move(col));
        }

        QueryResult pk = connector.query(
            "SELECT column_name FROM information_schema.key_column_usage "
            "WHERE table_schema = DATABASE() AND table_name = " + name_literal +
            " AND constraint_name = 'PRIMARY' ORDER BY ordinal_position");
        for (const auto& pk_row : pk.rows) table.primary_key.push_back(value_text(pk_row.at(0)));

        snapshot.tables.push_back(std::move(table));
    }

    QueryResult fks = connector.query(
        "SELECT table_name, column_name, referenced_table_name, referenced_column_name "
        "FROM information_schema.key_column_usage "
        "WHERE table_schema = DATABASE() AND referenced_table_name IS NOT NULL "
        "ORDER BY table_name, ordinal_position");
    for (const auto& fk_row : fks.rows) {
        snapshot.foreign_keys.push_back({value_text(fk_row.at(0)), value_text(fk_row.at(1)),
                                         value_text(fk_row.at(2)), value_text(fk_row.at(3))});
    }
    return snapshot;
}

SchemaSnapshot introspect_postgres(Connector& connector, const std::string& db_id) {
    SchemaSnapshot snapshot;
    snapshot.db_id = db_id;
    snapshot.engine = Engine::postgresql;

    QueryResult tables = connector.query(
        "SELECT c.relname, obj_description(c.oid, 'pg_class') "
        "FROM pg_catalog.pg_class c "
        "JOIN pg_catalog.pg_namespace n ON n.oid = c.relnamespace "
        "WHERE c.relkind = 'r' AND n.nspname = current_schema() "
        "ORDER BY c.relname");

    for (const auto& table_row : tables.rows) {
        TableMeta table;
        table.name = value_text(table_row.at(0));
        table.original_comment = optional_text(table_row.at(1));

        std::string name_literal = "'" + escape_literal(table.name) + "'";
        QueryResult cols = connector.query(
            "SELECT c.column_name, c.data_type, c.is_nullable, "
            "col_description(pc.oid, c.ordinal_position) "
            "FROM information_schema.columns c "
            "JOIN pg_catalog.pg_class pc ON pc.relname = c.table_name "
            "JOIN pg_catalog.pg_namespace pn ON pn.oid = pc.relnamespace "
            "AND pn.nspname = c.table_schema "
            "WHERE c.table_schema = current_schema() AND c.table_name = " + name_literal +
            " ORDER BY c.ordinal_position");
        for (const auto& col_row : cols.rows) {
            ColumnMeta col;
            col.name = value_text(col_row.at(0));
            col.declared_type = value_text(col_row.at(1));
            col.normalized_type = normalize_type(Engine::postgresql, col.declared_type);
            col.nullable = value_text(col_row.at(2)) == "YES";
            col.original_comment = optional_text(col_row.at(3));
            table.columns.push_back(std::move(col));
        }

        QueryResult pk = connector.query(
            "SELECT kcu.column_name "
            "FROM information_schema.table_constraints tc "
            "JOIN information_schema.key_column_usage kcu "
            "ON tc.constraint_name = kcu.constraint_name AND tc.table_schema = kcu.table_schema "
            "WHERE tc.constraint_type = 'PRIMARY KEY' AND tc.table_schema = current_schema() "
            "AND tc.table_name = " + name_literal + " ORDER BY kcu.ordinal_position");
        for (const auto& pk_row : pk.rows) {
            std::string pk_col = value_text(pk_row.at(0));
            table.primary_key.push_back(pk_col);
            for (auto& col : table.columns) {
                if (col.name == pk_col) col.is_primary_key = true;
            }
        }

        QueryResult uniques = connector.query(
            "SELECT kcu.column_name, COUNT(*) OVER (PARTITION BY tc.constraint_name) "
            "FROM information_schema.table_constraints tc "
            "JOIN information_schema.key_column_usage kcu "
            "ON tc.constraint_name = kcu.constraint_name AND tc.table_schema = kcu.table_schema "
            "WHERE tc.constraint_type = 'UNIQUE' AND tc.table_schema = current_schema() "
            "AND tc.table_name = " + name_literal);
        for (const auto& uq_row : uniques.rows) {
            bool single = uq_row.at(1).is_int() && uq_row.at(1).as_int() == 1;
            if (!single) continue;
            std::string uq_col = value_text(uq_row.at(0));
            for (auto& col : table.columns) {
                if (col.name == uq_col) col.declared_unique = true;
            }
        }

        snapshot.tables.push_back(std::move(table));
    }

    QueryResult fks = connector.query(
        "SELECT kcu.table_name, kcu.column_name, ccu.table_name, ccu.column_name "
        "FROM information_schema.table_constraints tc "
        "JOIN information_schema.key_column_usage kcu "
        "ON tc.constraint_name = kcu.constraint_name AND tc.table_schema = kcu.table_schema "
        "JOIN information_schema.constraint_column_usage ccu "
        "ON tc.constraint_name = ccu.constraint_name AND tc.table_schema = ccu.table_schema "
        "WHERE tc.constraint_type = 'FOREIGN KEY' AND tc.table_schema = current_schema() "
        "ORDER BY kcu.table_name, kcu.ordinal_position");
    for (const auto& fk_row : fks.rows) {
        snapshot.foreign_keys.push_back({value_text(fk_row.at(0)), value_text(fk_row.at(1)),
                                         value_text(fk_row.at(2)), value_text(fk_row.at(3))});
    }
    return snapshot;
}

} // namespace dbdesc::detail
