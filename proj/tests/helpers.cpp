#include "helpers.hpp"

#include "dbdesc/errors.hpp"

#include <sqlite3.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <fstream>
#include <sstream>

namespace dbdesc::testing {

TempDir::TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "dbdesc_test_XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw Error("mkdtemp failed");
    path_ = buf.data();
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void exec_sqlite(const std::filesystem::path& db_path, const std::string& sql) {
    sqlite3* db = nullptr;
    if (sqlite3_open(db_path.c_str(), &db) != SQLITE_OK) {
        std::string msg = db ? sqlite3_errmsg(db) : "open failed";
        if (db) sqlite3_close(db);
        throw Error("cannot open fixture db " + db_path.string() + ": " + msg);
    }
    char* err = nullptr;
    if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "exec failed";
        sqlite3_free(err);
        sqlite3_close(db);
        throw Error("fixture sql failed on " + db_path.string() + ": " + msg);
    }
    sqlite3_close(db);
}

QueryResult FakeConnector::query(const std::string& sql) {
    executed.push_back(sql);
    for (const auto& response : responses_) {
        bool all = true;
        for (const auto& pattern : response.patterns) {
            if (sql.find(pattern) == std::string::npos) {
                all = false;
                break;
            }
        }
        if (all) return response.result;
    }
    throw QueryError("no scripted result for: " + sql);
}

LogCapture::LogCapture() {
    log::set_sink([this](log::Level level, const std::string& msg) {
        std::lock_guard<std::mutex> lock(mutex_);
        messages_.emplace_back(level, msg);
    });
}

LogCapture::~LogCapture() {
    log::reset_sink();
}

bool LogCapture::contains(log::Level level, const std::string& substring) const {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [msg_level, msg] : messages_) {
        if (msg_level == level && msg.find(substring) != std::string::npos) return true;
    }
    return false;
}

size_t LogCapture::count(log::Level level) const {
    std::lock_guard<std::mutex> lock(mutex_);
    size_t n = 0;
    for (const auto& [msg_level, msg] : messages_) {
        if (msg_level == level) ++n;
    }
    return n;
}

namespace {

std::string read_all(int fd) {
    std::string out;
    std::array<char, 4096> buf;
    ssize_t n;
    while ((n = read(fd, buf.data(), buf.size())) > 0) out.append(buf.data(), n);
    return out;
}

} // namespace

CommandResult run_command(const std::vector<std::string>& argv) {
    int out_pipe[2];
    int err_pipe[2];
    if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) throw Error("pipe failed");

    pid_t pid = fork();
    if (pid < 0) throw Error("fork failed");
    if (pid == 0) {
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        std::vector<char*> args;
        for (const auto& arg : argv) args.push_back(const_cast<char*>(arg.c_str()));
        args.push_back(nullptr);
        execv(args[0], args.data());
        _exit(127);
    }
    close(out_pipe[1]);
    close(err_pipe[1]);
    CommandResult result;
    result.output = read_all(out_pipe[0]);
    result.errors = read_all(err_pipe[0]);
    close(out_pipe[0]);
    close(err_pipe[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

size_t oracle_word_count(const std::string& s) {
    std::istringstream in(s);
    std::string token;
    size_t n = 0;
    while (in >> token) ++n;
    return n;
}

} // namespace dbdesc::testing
