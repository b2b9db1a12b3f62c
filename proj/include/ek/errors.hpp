#pragma once

#include <stdexcept>
#include <string>

namespace ek {

/// Machine-readable failure categories, used for CLI exit reporting.
enum class ErrorCategory {
  degenerate_input,
  density_range,
  non_irrotational,
  quadrature_not_converged,
  insufficient_samples,
  step_rejection,
  config_parse,
  io,
  internal,
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::degenerate_input: return "degenerate-input";
    case ErrorCategory::density_range: return "density-range-violation";
    case ErrorCategory::non_irrotational: return "non-irrotational";
    case ErrorCategory::quadrature_not_converged: return "quadrature-not-converged";
    case ErrorCategory::insufficient_samples: return "insufficient-samples";
    case ErrorCategory::step_rejection: return "step-rejection";
    case ErrorCategory::config_parse: return "config-parse";
    case ErrorCategory::io: return "io";
    case ErrorCategory::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& what)
      : std::runtime_error(std::string(category_name(cat)) + ": " + what), cat_(cat) {}
  ErrorCategory category() const { return cat_; }

 private:
  ErrorCategory cat_;
};

}  // namespace ek
