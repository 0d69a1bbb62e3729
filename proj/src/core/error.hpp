#pragma once

#include <stdexcept>
#include <string>

namespace nws {

enum class ErrKind {
    invalid_arg,
    io,
    format,
    mismatch,
    runtime,
};

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

[[noreturn]] void fail(ErrKind kind, const char* fmt, ...);

} // namespace nws
