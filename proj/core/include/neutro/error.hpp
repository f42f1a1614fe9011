#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neutro {

enum class Errc {
  InvalidEndpoint,
  DivisionBySetContainingZero,
  EmptySet,
  UndefinedSubindeterminacyProduct,
  DivisionByZero,
  NotInvertible,
  IndeterminateDenominator,
  DomainError,
  NotSupported,
  ParseError,
  OverlapError,
  NonMonotoneParameter,
  OutOfRange,
  NotFound,
  PreconditionError,
  IntegrationError,
  InvalidBounds,
  UsageError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace neutro
