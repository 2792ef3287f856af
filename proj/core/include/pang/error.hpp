#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pang {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph violates the simple/undirected/dense-id invariants, or an
/// operation received a graph it cannot handle (e.g. disconnected pattern).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument is outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pang
