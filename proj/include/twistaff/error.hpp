#pragma once

#include <stdexcept>
#include <string>

namespace twistaff {

enum class ErrorKind {
    usage,
    config,
    division_by_zero,
    conductor_cap,
    unsupported_alpha,
    lie_invalid,
    not_automorphism,
    domain,
    cutoff_exceeded,
    verification,
    internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace twistaff
