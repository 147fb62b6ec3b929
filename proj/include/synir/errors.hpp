#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synir {

// Failure while reading an input file. Carries file name and 1-based
// line/column so CLI diagnostics can point at the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column,
             const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

// Semantic violation in otherwise well-formed data (duplicate ids,
// dangling references, lexicon inconsistencies, empty collections).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query projected to nothing after stop removal. Experiments record
// this per query and continue; it is fatal only for direct scoring calls.
class EmptyQueryError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace synir
