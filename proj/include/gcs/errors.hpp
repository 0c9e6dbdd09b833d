#pragma once

#include <stdexcept>
#include <string>

namespace gcs {

enum class ErrorKind {
  domain,           // argument outside the mathematical domain
  numerical,        // non-finite values or a series/quadrature that did not settle
  capacity,         // basis index beyond the truncation cap
  config,           // invalid physical configuration
  unsupported,      // operation not defined for the given family
  invalid_request,  // malformed command-line request
  non_convergence,  // coherent-state truncation did not reach the tolerance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gcs
