#include "dbdesc/introspect.hpp"

#include "dbdesc/errors.hpp"
#include "dbdesc/text.hpp"
#include "introspect_impl.hpp"

#include <algorithm>

namespace dbdesc {

namespace {

bool contains(const std::string& haystack, const char* needle) {
    return haystack.find(needle) != std::string::npos;
}

NormalizedType normalize_sqlite(const std::string& upper) {
    // boolean / temporal names take precedence over the affinity rules
    if (upper == "BOOLEAN" || upper == "BOOL") return NormalizedType::boolean;
    if (contains(upper, "DATETIME") || contains(upper, "TIMESTAMP") || contains(upper, "DATE") ||
        contains(upper, "TIME")) {
        return NormalizedType::datetime;
    }
    if (upper.empty() || contains(upper, "BLOB")) return NormalizedType::blob;
    if (contains(upper, "INT")) return NormalizedType::integer;
    if (contains(upper, "CHAR") || contains(upper, "CLOB") || contains(upper, "TEXT")) {
        return NormalizedType::text;
    }
    if (contains(upper, "REAL") || contains(upper, "FLOA") || contains(upper, "DOUB") ||
        contains(upper, "DECIMAL") || contains(upper, "NUMERIC")) {
        return NormalizedType::real;
    }
    return NormalizedType::other;
}

std::string base_name(const std::string& upper) {
    size_t paren = upper.find('(');
    std::string base = paren == std::string::npos ? upper : upper.substr(0, paren);
    size_t space = base.find(' ');
    if (space != std::string::npos && base.substr(0, space) != "DOUBLE") {
        base = base.substr(0, space); // strips UNSIGNED / ZEROFILL
    }
    return text::trim(base);
}

NormalizedType normalize_mysql(const std::string& upper) {
    if (upper.rfind("TINYINT(1)", 0) == 0 || upper == "BIT(1)") return NormalizedType::boolean;
    std::string base = base_name(upper);
    if (base == "BOOLEAN" || base == "BOOL") return NormalizedType::boolean;
    if (base == "TINYINT" || base == "SMALLINT" || base == "MEDIUMINT" || base == "INT" ||
        base == "INTEGER" || base == "BIGINT") {
        return NormalizedType::integer;
    }
    if (base == "FLOAT" || base == "DOUBLE" || base == "DOUBLE PRECISION" || base == "DECIMAL" ||
        base == "NUMERIC") {
        return NormalizedType::real;
    }
    if (base == "DATE" || base == "DATETIME" || base == "TIMESTAMP" || base == "TIME" ||
        base == "YEAR") {
        return NormalizedType::datetime;
    }
    if (base == "CHAR" || base == "VARCHAR" || base == "TINYTEXT" || base == "TEXT" ||
        base == "MEDIUMTEXT" || base == "LONGTEXT" || base == "ENUM" || base == "SET") {
        return NormalizedType::text;
    }
    if (base == "BINARY" || base == "VARBINARY" || base == "TINYBLOB" || base == "BLOB" ||
        base == "MEDIUMBLOB" || base == "LONGBLOB") {
        return NormalizedType::blob;
    }
    return NormalizedType::other;
}

NormalizedType normalize_postgres(const std::string& upper) {
    std::string base = base_name(upper);
    if (base == "SMALLINT" || base == "INTEGER" || base == "INT" || base == "INT2" ||
        base == "INT4" || base == "INT8" || base == "BIGINT" || base == "SMALLSERIAL" ||
        base == "SERIAL" || base == "BIGSERIAL") {
        return NormalizedType::integer;
    }
    if (base == "REAL" || base == "FLOAT4" || base == "FLOAT8" || base == "NUMERIC" ||
        base == "DECIMAL" || upper.rfind("DOUBLE PRECISION", 0) == 0) {
        return NormalizedType::real;
    }
    if (base == "BOOLEAN" || base == "BOOL") return NormalizedType::boolean;
    if (base == "DATE" || base == "TIMESTAMP" || base == "TIMESTAMPTZ" || base == "TIME" ||
        base == "TIMETZ" || upper.rfind("TIMESTAMP", 0) == 0 || upper.rfind("TIME", 0) == 0) {
        return NormalizedType::datetime;
    }
    if (base == "CHARACTER" || base == "CHAR" || base == "VARCHAR" || base == "TEXT" ||
        base == "BPCHAR" || base == "NAME" || base == "UUID" ||
        upper.rfind("CHARACTER VARYING", 0) == 0) {
        return NormalizedType::text;
    }
    if (base == "BYTEA") return NormalizedType::blob;
    return NormalizedType::other;
}

} // namespace

NormalizedType normalize_type(Engine engine, const std::string& declared_type) {
    std::string upper = text::to_upper(text::trim(declared_type));
    switch (engine) {
    case Engine::sqlite: return normalize_sqlite(upper);
    case Engine::mysql: return normalize_mysql(upper);
    case Engine::postgresql: return normalize_postgres(upper);
    }
    return NormalizedType::other;
}

SchemaSnapshot introspect_snapshot(Connector& connector, const std::string& db_id) {
    SchemaSnapshot snapshot;
    switch (connector.engine()) {
    case Engine::sqlite:
        snapshot = detail::introspect_sqlite(connector, db_id);
        break;
    case Engine::mysql:
        snapshot = detail::introspect_mysql(connector, db_id);
        break;
    case Engine::postgresql:
        snapshot = detail::introspect_postgres(connector, db_id);
        break;
    }
    if (snapshot.tables.empty()) {
        throw EmptyDatabaseError("database " + db_id + " has no user tables");
    }
    std::sort(snapshot.foreign_keys.begin(), snapshot.foreign_keys.end());
    for (const auto& fk : snapshot.foreign_keys) {
        for (auto& table : snapshot.tables) {
            if (table.name != fk.from_table) continue;
            for (auto& column : table.columns) {
                if (column.name == fk.from_column) column.is_foreign_key = true;
            }
        }
    }
    snapshot.validate();
    return snapshot;
}

SchemaSnapshot introspect_database(const ConnectionSpec& spec) {
    auto connector = make_connector(spec);
    return introspect_snapshot(*connector, spec.db_id());
}

} // namespace dbdesc
