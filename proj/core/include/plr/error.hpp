#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace plr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message, std::string token);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string token_;
};

/// Roles or concrete properties shared between the main KB (or a query) and the oracle.
class SignatureViolation : public Error {
 public:
  explicit SignatureViolation(std::vector<std::string> names);
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

/// The oracle could not answer: the channel failed or it sent an `E` response.
/// Distinct from a negative answer.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

/// A configured cap (derived facts, split disjuncts, rewrite budget) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Input outside what a component supports (e.g. role axioms given to the brute-force oracle).
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// The policy generator could not produce a consistent policy within its retry cap.
class GenerationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace plr
