#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

// Minimal stderr logger. Level comes from the ISOPAR_LOG environment
// variable: debug | info | warn | error | off. Default: warn.
namespace isopar::log {

enum class Level { debug = 0, info, warn, error, off };

inline Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("ISOPAR_LOG");
    if (env == nullptr) return Level::warn;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "warn") == 0) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "off") == 0) return Level::off;
    return Level::warn;
  }();
  return lvl;
}

inline void vlogf(Level lvl, const char* tag, const char* fmt, std::va_list args) {
  if (lvl < level()) return;
  std::fprintf(stderr, "[%s] ", tag);
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
}

#if defined(__GNUC__)
#define ISOPAR_PRINTF_LIKE __attribute__((format(printf, 1, 2)))
#else
#define ISOPAR_PRINTF_LIKE
#endif

ISOPAR_PRINTF_LIKE inline void debug(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  vlogf(Level::debug, "debug", fmt, args);
  va_end(args);
}

ISOPAR_PRINTF_LIKE inline void info(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  vlogf(Level::info, "info", fmt, args);
  va_end(args);
}

ISOPAR_PRINTF_LIKE inline void warn(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  vlogf(Level::warn, "warn", fmt, args);
  va_end(args);
}

ISOPAR_PRINTF_LIKE inline void error(const char* fmt, ...) {
  std::va_list args;
  va_start(args, fmt);
  vlogf(Level::error, "error", fmt, args);
  va_end(args);
}

#undef ISOPAR_PRINTF_LIKE

}  // namespace isopar::log
