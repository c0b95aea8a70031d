#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

// Thrown when a map or diagram violates a structural invariant
// (bad pairing, dangling dart, disconnected where connectivity is required, ...).
struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for invalid user-supplied arguments (CLI values, malformed JSON fields).
struct argument_error : std::invalid_argument {
  explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a lookup by code or index finds nothing.
struct not_found_error : std::runtime_error {
  explicit not_found_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mobius
