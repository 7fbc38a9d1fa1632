#include "slotforge/log.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

namespace slotforge {

namespace {

std::optional<LogLevel> g_override;

LogLevel from_env() {
  const char* env = std::getenv("SLOTFORGE_LOG");
  if (!env) return LogLevel::Warn;
  std::string v(env);
  if (v == "error") return LogLevel::Error;
  if (v == "warn") return LogLevel::Warn;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

const char* level_name(LogLevel l) {
  switch (l) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_level() { return g_override ? *g_override : from_env(); }

void set_log_level(LogLevel level) { g_override = level; }

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::cerr << "[" << level_name(level) << "] " << msg << "\n";
}

}  // namespace slotforge
