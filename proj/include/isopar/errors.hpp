#pragma once

#include <stdexcept>
#include <string>

namespace isopar {

// Thrown when an integration or evaluation leaves the representable regime
// (non-finite state, shape-operator blow-up past the configured cap, ...).
// Distinct from std::invalid_argument so callers can map it to a dedicated
// exit status.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isopar
