#include "dbdesc/connector.hpp"
#include "dbdesc/errors.hpp"

#include <sqlite3.h>

#include <filesystem>

namespace dbdesc {

std::string Connector::quote_identifier(const std::string& name) const {
    char quote = engine() == Engine::mysql ? '`' : '"';
    std::string out(1, quote);
    for (char c : name) {
        out.push_back(c);
        if (c == quote) out.push_back(quote); // doubled quote escapes itself
    }
    out.push_back(quote);
    return out;
}

namespace {

class SqliteConnector final : public Connector {
public:
    explicit SqliteConnector(const ConnectionSpec& spec) {
        if (spec.path != ":memory:" && !std::filesystem::exists(spec.path)) {
            throw ConnectionError("sqlite database file not found: " + spec.path);
        }
        int flags = SQLITE_OPEN_READONLY;
        if (spec.path == ":memory:") flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE;
        if (sqlite3_open_v2(spec.path.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
            std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
            if (db_) sqlite3_close(db_);
            db_ = nullptr;
            throw ConnectionError("cannot open sqlite database " + spec.path + ": " + msg);
        }
    }

    ~SqliteConnector() override {
        if (db_) sqlite3_close(db_);
    }

    SqliteConnector(const SqliteConnector&) = delete;
    SqliteConnector& operator=(const SqliteConnector&) = delete;

    Engine engine() const override { return Engine::sqlite; }

    QueryResult query(const std::string& sql) override {
        sqlite3_stmt* stmt = nullptr;
        if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
            throw QueryError("sqlite prepare failed: " + std::string(sqlite3_errmsg(db_)) +
                             " in: " + sql);
        }
        QueryResult result;
        int ncols = sqlite3_column_count(stmt);
        for (int i = 0; i < ncols; ++i) {
            const char* name = sqlite3_column_name(stmt, i);
            result.columns.push_back(name ? name : "");
        }
        int rc;
        while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
            std::vector<Value> row;
            row.reserve(ncols);
            for (int i = 0; i < ncols; ++i) {
                switch (sqlite3_column_type(stmt, i)) {
                case SQLITE_INTEGER:
                    row.emplace_back(static_cast<int64_t>(sqlite3_column_int64(stmt, i)));
                    break;
                case SQLITE_FLOAT:
                    row.emplace_back(sqlite3_column_double(stmt, i));
                    break;
                case SQLITE_TEXT: {
                    const unsigned char* t = sqlite3_column_text(stmt, i);
                    int n = sqlite3_column_bytes(stmt, i);
                    row.emplace_back(std::string(reinterpret_cast<const char*>(t), n));
                    break;
                }
                case SQLITE_BLOB: {
                    const auto* b = static_cast<const uint8_t*>(sqlite3_column_blob(stmt, i));
                    int n = sqlite3_column_bytes(stmt, i);
                    row.emplace_back(std::vector<uint8_t>(b, b + n));
                    break;
                }
                default:
                    row.emplace_back();
                    break;
                }
            }
            result.rows.push_back(std::move(row));
        }
        if (rc != SQLITE_DONE) {
            std::string msg = sqlite3_errmsg(db_);
            sqlite3_finalize(stmt);
            throw QueryError("sqlite step failed: " + msg + " in: " + sql);
        }
        sqlite3_finalize(stmt);
        return result;
    }

private:
    sqlite3* db_ = nullptr;
};

} // namespace

std::unique_ptr<Connector> make_connector(const ConnectionSpec& spec) {
    switch (spec.engine) {
    case Engine::sqlite:
        return std::make_unique<SqliteConnector>(spec);
    case Engine::mysql:
        throw ConnectionError("mysql driver is not available in this build");
    case Engine::postgresql:
        throw ConnectionError("postgresql driver is not available in this build");
    }
    throw ConnectionError("unknown engine");
}

} // namespace dbdesc
