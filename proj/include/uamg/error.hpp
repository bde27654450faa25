#pragma once

#include <stdexcept>
#include <string>

namespace uamg {

// Base of every exception thrown by the library. `kind()` is a stable short
// tag that the command line tool prints as the machine-parsable reason.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error("dimension-mismatch", what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error("invalid-input", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse-error", what) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& what) : Error("singular-system", what) {}
};

struct InconsistentRhs : Error {
  explicit InconsistentRhs(const std::string& what) : Error("inconsistent-rhs", what) {}
};

struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& what) : Error("convergence-failure", what) {}
};

struct Breakdown : Error {
  explicit Breakdown(const std::string& what) : Error("breakdown", what) {}
};

struct SizeCapExceeded : Error {
  explicit SizeCapExceeded(const std::string& what) : Error("size-cap-exceeded", what) {}
};

} // namespace uamg
