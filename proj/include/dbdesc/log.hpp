#pragma once

#include <functional>
#include <string>

namespace dbdesc::log {

enum class Level { debug, info, warn, error };

using Sink = std::function<void(Level, const std::string&)>;

// Default sink writes "level: message" to stderr. Tests install their own
// sink to assert on warnings.
void set_sink(Sink sink);
void reset_sink();

void emit(Level level, const std::string& msg);

inline void debug(const std::string& msg) { emit(Level::debug, msg); }
inline void info(const std::string& msg) { emit(Level::info, msg); }
inline void warn(const std::string& msg) { emit(Level::warn, msg); }
inline void error(const std::string& msg) { emit(Level::error, msg); }

} // namespace dbdesc::log
