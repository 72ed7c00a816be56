#pragma once

#include <stdexcept>
#include <string>

namespace stiet {

// Every error carries a stable machine-readable code; the CLI maps the
// category onto its exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// A documented precondition of an operation does not hold (exit status 2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Certified comparison could not be decided within the precision ladder
// (exit status 3).
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error("precision-exhausted", what) {}
};

}  // namespace stiet
