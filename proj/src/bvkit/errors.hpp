#pragma once

#include <stdexcept>
#include <string>

namespace bvkit {

// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
    Parse = 1,
    InvalidArgument = 2,
    Precondition = 3,
    Lift = 4,
    CheckFailed = 5,
    Io = 6,
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// Raised when an exactness precondition fails: a cocycle that should be a
// boundary is not (the resolution is not acyclic where it was assumed to be).
class LiftError : public Error {
public:
    explicit LiftError(const std::string& msg) : Error(ErrorKind::Lift, msg) {}
};

inline Error invalid(const std::string& msg) { return Error(ErrorKind::InvalidArgument, msg); }
inline Error precondition(const std::string& msg) { return Error(ErrorKind::Precondition, msg); }

}  // namespace bvkit
