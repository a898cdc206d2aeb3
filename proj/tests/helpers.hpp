#pragma once

#include "dbdesc/connector.hpp"
#include "dbdesc/log.hpp"
#include "dbdesc/model.hpp"
#include "dbdesc/value.hpp"

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace dbdesc::testing {

// Self-deleting scratch directory under the system temp dir.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

// Runs DDL/DML against a sqlite file, creating it if needed. Write access
// bypasses the read-only connector on purpose; only tests build fixtures.
void exec_sqlite(const std::filesystem::path& db_path, const std::string& sql);

// Scripted connector: responses are registered as (substring set ->
// result); the first registration whose substrings all occur in the SQL
// wins. Lets the MySQL/PostgreSQL catalog readers run without a server.
class FakeConnector final : public Connector {
public:
    explicit FakeConnector(Engine engine) : engine_(engine) {}

    void on(std::vector<std::string> patterns, QueryResult result) {
        responses_.push_back({std::move(patterns), std::move(result)});
    }

    Engine engine() const override { return engine_; }
    QueryResult query(const std::string& sql) override;

    std::vector<std::string> executed;

private:
    struct Response {
        std::vector<std::string> patterns;
        QueryResult result;
    };
    Engine engine_;
    std::vector<Response> responses_;
};

// Captures log output for the duration of its scope.
class LogCapture {
public:
    LogCapture();
    ~LogCapture();

    bool contains(log::Level level, const std::string& substring) const;
    size_t count(log::Level level) const;

private:
    mutable std::mutex mutex_;
    std::vector<std::pair<log::Level, std::string>> messages_;
};

// Subprocess invocation for CLI tests.
struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout
    std::string errors; // stderr
};

CommandResult run_command(const std::vector<std::string>& argv);

std::string slurp(const std::filesystem::path& path);

// independent whitespace-token count used by word-limit assertions
size_t oracle_word_count(const std::string& s);

} // namespace dbdesc::testing
