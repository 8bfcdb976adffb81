#include "avforge/error.hpp"

namespace avforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Domain: return "domain";
  case ErrorKind::InvalidWeil: return "invalid-weil";
  case ErrorKind::Unsupported: return "unsupported";
  case ErrorKind::BudgetExceeded: return "budget-exceeded";
  case ErrorKind::ExpansionTooLarge: return "expansion-too-large";
  case ErrorKind::PrecisionExhausted: return "precision-exhausted";
  case ErrorKind::Verification: return "verification";
  }
  return "unknown";
}

} // namespace avforge
