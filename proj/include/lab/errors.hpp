#pragma once

#include <stdexcept>
#include <string>

namespace lab {

// Invalid input values (negative mass, non-density, NaN, malformed instances).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation's stated precondition does not hold (hypercontractive threshold,
// Lipschitz bound, hypothesis of a corollary). Distinct from an inequality
// failure, which is reported through VerificationReport::pass.
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Enumeration/size caps exceeded.
class size_error : public std::runtime_error {
 public:
  explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// CLI / config file problems.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lab
