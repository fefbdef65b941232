#ifndef BP_ERROR_HPP
#define BP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bp {

enum class ErrorCode {
  InvalidOperand,
  NotInvertible,
  DomainError,
  HenselFailure,
  NotAField,
  PrecisionExhausted,
  NotKummer,
  NotMonogenicAtQ,
  IncompleteFactorization,
  InsufficientClassData,
  LeopoldtRankWarning,
  NotASublattice,
  SchemaError,
};

std::string_view error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bp

#endif
