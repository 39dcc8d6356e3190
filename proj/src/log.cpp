#include "fairbias/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace fairbias::log {

namespace {
std::atomic<Level> g_level{Level::warn};
std::mutex g_mutex;

const char* tag(Level lvl) {
    switch (lvl) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
    default: return "";
    }
}
}  // namespace

void set_level(Level lvl) { g_level = lvl; }
Level level() { return g_level; }

void write(Level lvl, const std::string& message) {
    std::lock_guard lock(g_mutex);
    std::cerr << "[" << tag(lvl) << "] " << message << '\n';
}

}  // namespace fairbias::log
