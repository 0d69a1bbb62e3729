#include "core/log.hpp"
#include "core/error.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace nws {

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("NWS_LOG");
        if (!env) return LogLevel::info;
        if (std::strcmp(env, "error") == 0) return LogLevel::error;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

namespace {

void vlog(const char* tag, const char* fmt, va_list args) {
    std::fprintf(stderr, "[nws %s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}

} // namespace

void log_error(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    vlog("error", fmt, args);
    va_end(args);
}

void log_info(const char* fmt, ...) {
    if (log_level() < LogLevel::info) return;
    va_list args;
    va_start(args, fmt);
    vlog("info", fmt, args);
    va_end(args);
}

void log_debug(const char* fmt, ...) {
    if (log_level() < LogLevel::debug) return;
    va_list args;
    va_start(args, fmt);
    vlog("debug", fmt, args);
    va_end(args);
}

void fail(ErrKind kind, const char* fmt, ...) {
    char buf[1024];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    throw Error(kind, buf);
}

} // namespace nws
