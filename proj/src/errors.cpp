#include "nctrace/errors.hpp"

namespace nctrace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::NotSymmetric: return "not self-adjoint";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotHermitian: return "not Hermitian";
    case ErrorCode::Degree: return "insufficient degree";
    case ErrorCode::InconsistentConstraints: return "inconsistent constraints";
    case ErrorCode::NotPsd: return "not positive semidefinite";
    case ErrorCode::Solver: return "solver failure";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error(ErrorCode::Parse, message + " at offset " + std::to_string(offset)),
      offset_(offset),
      detail_(message) {}

}  // namespace nctrace
