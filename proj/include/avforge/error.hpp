#pragma once

#include <stdexcept>
#include <string>

namespace avforge {

enum class ErrorKind {
  Domain,             // precondition or argument violation
  InvalidWeil,        // input is not a Weil q-integer
  Unsupported,        // case deliberately outside the implemented scope
  BudgetExceeded,     // factorization / search / enumeration budget ran out
  ExpansionTooLarge,  // coefficient-size guard tripped
  PrecisionExhausted, // certified numerics could not separate roots
  Verification,       // a certificate claim did not re-derive
};

const char* to_string(ErrorKind kind);

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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::Domain, what);
}

} // namespace avforge
