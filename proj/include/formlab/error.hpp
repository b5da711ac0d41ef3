#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace formlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL text. `offset` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, const std::string& message)
      : Error("parse error at offset " + std::to_string(offset) + ": " + message +
              (expected.empty() ? "" : " (expected " + expected + ")")),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A configured size or step cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (e.g. multiples_dfa(0)).
class DomainError : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A grammar handed to an operation that requires Chomsky normal form.
class NotCnf : public Error {
 public:
  using Error::Error;
};

/// Structured-document problem; `path` locates the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace formlab
