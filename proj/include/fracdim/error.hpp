#ifndef FRACDIM_ERROR_HPP
#define FRACDIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fracdim {

enum class ErrorKind {
  invalid_input,
  numerical_failure,
  resource,
  precondition,
  unsupported_order,
  insufficient_data,
  budget,
  parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::resource: return "resource";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::budget: return "budget";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so that callers (the CLI
/// in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace fracdim

#endif  // FRACDIM_ERROR_HPP
