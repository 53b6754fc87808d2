#ifndef QIDLAB_ERROR_HPP
#define QIDLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qidlab {

/// Failure categories. The CLI maps `invalid_argument` and `precondition`
/// to exit code 2 and everything else to exit code 3.
enum class ErrorKind {
  invalid_argument,
  precondition,
  resolution,
  possible_zero,
  branch_tracking,
  identically_zero,
  unverifiable,
  search_exhausted,
  not_extractable,
  bound_violation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::precondition: return "precondition violation";
    case ErrorKind::resolution: return "resolution underflow";
    case ErrorKind::possible_zero: return "possible zero on path";
    case ErrorKind::branch_tracking: return "branch tracking failed";
    case ErrorKind::identically_zero: return "identically zero imaginary part";
    case ErrorKind::unverifiable: return "selection unverifiable";
    case ErrorKind::search_exhausted: return "search exhausted";
    case ErrorKind::not_extractable: return "not extractable";
    case ErrorKind::bound_violation: return "bound violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::invalid_argument || kind_ == ErrorKind::precondition;
  }

 private:
  ErrorKind kind_;
};

}  // namespace qidlab

#endif  // QIDLAB_ERROR_HPP
