#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nctrace {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  NotSymmetric,
  DimensionMismatch,
  NotHermitian,
  Degree,
  InconsistentConstraints,
  NotPsd,
  Solver,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Malformed polynomial text. offset is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace nctrace
