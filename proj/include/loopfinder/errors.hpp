#pragma once

#include <stdexcept>
#include <string>

namespace lf {

// Raised when a configured budget (pool size, pair length, search nodes,
// mode arity) would be exceeded. The message names the budget that tripped.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lf
