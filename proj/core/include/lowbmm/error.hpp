#pragma once

#include <stdexcept>
#include <string>

namespace lowbmm {

// Every error raised by the library carries a category so the CLI can map it
// to a stable exit code.
enum class ErrorCategory {
  kConfig = 2,     // invalid parameters or configuration
  kIo = 3,         // unreadable or unwritable files
  kData = 4,       // malformed input data (e.g. a row that is not a permutation)
  kDimension = 5,  // mismatched lengths between objects that must agree
  kIndex = 6,      // item indices outside the universe, duplicates
  kDomain = 7,     // a well-formed request with no defined answer
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::kConfig, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::kIo, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::kData, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCategory::kDimension, what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error(ErrorCategory::kIndex, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::kDomain, what) {}
};

}  // namespace lowbmm
