#ifndef RWRE_ERRORS_HPP
#define RWRE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rwre {

// Invalid configuration (bad law parameters, inconsistent flags, ...).
// CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The analyzed path ends before the requested structure exists.
class HorizonError : public std::runtime_error {
 public:
  explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

// A computation exceeds its configured size/accuracy caps. CLI exit code 3.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace rwre

#endif  // RWRE_ERRORS_HPP
