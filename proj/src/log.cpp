#include "dbdesc/log.hpp"

#include <iostream>
#include <mutex>

namespace dbdesc::log {

namespace {

std::mutex g_mutex;

void default_sink(Level level, const std::string& msg) {
    const char* tag = "info";
    switch (level) {
    case Level::debug: tag = "debug"; break;
    case Level::info: tag = "info"; break;
    case Level::warn: tag = "warn"; break;
    case Level::error: tag = "error"; break;
    }
    std::cerr << tag << ": " << msg << "\n";
}

Sink& current_sink() {
    static Sink sink = default_sink;
    return sink;
}

} // namespace

void set_sink(Sink sink) {
    std::lock_guard<std::mutex> lock(g_mutex);
    current_sink() = std::move(sink);
}

void reset_sink() {
    std::lock_guard<std::mutex> lock(g_mutex);
    current_sink() = default_sink;
}

void emit(Level level, const std::string& msg) {
    std::lock_guard<std::mutex> lock(g_mutex);
    current_sink()(level, msg);
}

} // namespace dbdesc::log
