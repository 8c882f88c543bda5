#pragma once

#include <stdexcept>
#include <string>

namespace incmeter {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

// Input exceeds the size an exhaustive procedure is willing to handle.
class CapExceeded : public Error {
  public:
    using Error::Error;
};

// External solver missing, crashed, or produced unreadable output.
class BackendError : public Error {
  public:
    using Error::Error;
};

class UsageError : public Error {
  public:
    using Error::Error;
};

class TimeoutError : public Error {
  public:
    using Error::Error;
};

}  // namespace incmeter
