#pragma once

#include "dbdesc/connection.hpp"
#include "dbdesc/connector.hpp"
#include "dbdesc/errors.hpp"
#include "dbdesc/schema.hpp"

#include <map>
#include <optional>
#include <string>

namespace dbdesc {

// Raised when a database is reachable but holds zero user tables.
class EmptyDatabaseError : public Error {
public:
    using Error::Error;
};

// Opens a connection and reads the full user-table catalog. System tables
// are excluded. Throws ConnectionError / EmptyDatabaseError.
SchemaSnapshot introspect_database(const ConnectionSpec& spec);

// Same, over an existing session. Dispatches on connector.engine(), so a
// scripted connector can exercise the MySQL / PostgreSQL catalog mapping
// without a live server.
SchemaSnapshot introspect_snapshot(Connector& connector, const std::string& db_id);

// Engine type-name normalization; unrecognized names map to `other`.
// MySQL TINYINT(1) and BIT(1) map to boolean, pg uuid to text, etc.
NormalizedType normalize_type(Engine engine, const std::string& declared_type);

// Comments recovered from a CREATE TABLE statement. SQLite keeps no
// catalog comments, so trailing `-- text` tokens in the stored DDL are
// the best available source: a comment before the first column item (or
// after the closing paren) documents the table, a trailing comment inside
// the body documents the column whose definition it follows.
struct DdlComments {
    std::optional<std::string> table_comment;
    std::map<std::string, std::string> column_comments;
};

DdlComments parse_create_table_comments(const std::string& create_sql);

} // namespace dbdesc
