#pragma once

#include <sstream>
#include <string>

namespace fairbias::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

void set_level(Level level);
Level level();
void write(Level level, const std::string& message);

template <typename... Args>
void emit(Level lvl, const Args&... args) {
    if (lvl < level()) return;
    std::ostringstream os;
    (os << ... << args);
    write(lvl, os.str());
}

template <typename... Args> void debug(const Args&... a) { emit(Level::debug, a...); }
template <typename... Args> void info(const Args&... a) { emit(Level::info, a...); }
template <typename... Args> void warn(const Args&... a) { emit(Level::warn, a...); }
template <typename... Args> void error(const Args&... a) { emit(Level::error, a...); }

}  // namespace fairbias::log
