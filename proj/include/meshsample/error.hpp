#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshsample {

enum class ErrorCode {
  invalid_argument,
  invalid_mesh,
  negative_weight,
  zero_mass,
  all_zero_weights,
  iteration_cap,
  empty_sample,
  parse_error,
  index_out_of_range,
  count_mismatch,
  io_error,
  contract_violation,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::invalid_mesh: return "InvalidMesh";
    case ErrorCode::negative_weight: return "NegativeWeight";
    case ErrorCode::zero_mass: return "ZeroMass";
    case ErrorCode::all_zero_weights: return "AllZeroWeights";
    case ErrorCode::iteration_cap: return "IterationCap";
    case ErrorCode::empty_sample: return "EmptySample";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::count_mismatch: return "CountMismatch";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::contract_violation: return "ContractViolation";
  }
  return "Unknown";
}

// All library failures are reported through this type. `line` is the
// 1-based input line for file-format errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(code, message, line)), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(ErrorCode code, const std::string& message, std::size_t line) {
    std::string out = to_string(code);
    if (line != 0) out += " (line " + std::to_string(line) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::size_t line_;
};

}  // namespace meshsample

// Precondition checks on hot paths. Compiled in only when
// MESHSAMPLE_CHECK_CONTRACTS is defined (the unit-test build does this).
#ifdef MESHSAMPLE_CHECK_CONTRACTS
#define MESHSAMPLE_EXPECTS(cond)                                                     \
  do {                                                                               \
    if (!(cond))                                                                     \
      throw ::meshsample::Error(::meshsample::ErrorCode::contract_violation, #cond); \
  } while (false)
#else
#define MESHSAMPLE_EXPECTS(cond) ((void)0)
#endif
