#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A LIKE string that cannot be parsed (currently only the empty string).
class InvalidPredicate : public Error {
 public:
  using Error::Error;
};

/// Invalid miner, histogram, estimator or workload settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed pattern, catalog, dataset or query file. `line()` is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Catalog and dataset disagree (e.g. different row counts).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The reference miner refused to enumerate a search space larger than its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Workload generation could not find suitable material in the dataset.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace psph
