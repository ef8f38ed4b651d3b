#pragma once

#include <stdexcept>
#include <string>

namespace prepro {

// Error taxonomy mirrors the CLI exit codes:
//   InputError -> 2, CapError -> 3, DomainError -> 4.
// Verification failures are ordinary return values, not exceptions.

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapError : std::runtime_error {
  explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace prepro
