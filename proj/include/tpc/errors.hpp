#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tpc {

// Bad caller input (wrong sizes, out-of-range parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Ballot contains a brace-delimited tie group.
class UnsupportedTiesError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Every neighbor candidate was removed by the trust cutoff.
class EmptyResultError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metric needs data the dataset does not carry (e.g. latent features on real data).
class UnsupportedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tpc
