#pragma once

#include <stdexcept>
#include <string>

namespace supereds {

/// Broad failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  context_mismatch,
  unknown_generator,
  parity,
  precondition,
  parse,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ContextMismatch : public Error {
 public:
  explicit ContextMismatch(const std::string& what = "generator contexts differ")
      : Error(ErrorKind::context_mismatch, what) {}
};

class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& name)
      : Error(ErrorKind::unknown_generator, "unknown generator '" + name + "'") {}
};

class ParityError : public Error {
 public:
  explicit ParityError(const std::string& what) : Error(ErrorKind::parity, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(ErrorKind::parse, std::to_string(line) + ":" + std::to_string(column) +
                                    ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace supereds
