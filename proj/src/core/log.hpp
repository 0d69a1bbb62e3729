#pragma once

namespace nws {

// Verbosity is read once from NWS_LOG={error,info,debug}; default info.
enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level();

void log_error(const char* fmt, ...);
void log_info(const char* fmt, ...);
void log_debug(const char* fmt, ...);

} // namespace nws
