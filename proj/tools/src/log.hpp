#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace flab {

enum class LogLevel { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Verbosity from FRIEDMANN_LAB_LOG (quiet|error|warn|info|debug), default warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FRIEDMANN_LAB_LOG");
    if (!env) return LogLevel::warn;
    const std::string s = env;
    if (s == "quiet") return LogLevel::quiet;
    if (s == "error") return LogLevel::error;
    if (s == "info") return LogLevel::info;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

// Logs go to stderr only; stdout stays byte-deterministic report data.
inline void log_at(LogLevel lv, const std::string& msg) {
  static const char* names[] = {"quiet", "error", "warn", "info", "debug"};
  if (lv != LogLevel::quiet &&
      static_cast<int>(lv) <= static_cast<int>(log_level()))
    std::cerr << "[" << names[static_cast<int>(lv)] << "] " << msg << "\n";
}

inline void log_info(const std::string& msg) { log_at(LogLevel::info, msg); }
inline void log_debug(const std::string& msg) { log_at(LogLevel::debug, msg); }

} // namespace flab
