#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lab {

// Machine-readable record for one inequality instance.
struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool pass = false;  // lhs <= rhs + tolerance
  std::string witness;

  static VerificationReport check(std::string name, double lhs, double rhs,
                                  double tolerance, std::string witness = {}) {
    VerificationReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tolerance = tolerance;
    r.pass = lhs <= rhs + tolerance;
    r.witness = std::move(witness);
    return r;
  }
};

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

inline double min_margin(const std::vector<VerificationReport>& reports) {
  double m = 1.0 / 0.0;
  for (const auto& r : reports)
    if (r.margin < m) m = r.margin;
  return m;
}

}  // namespace lab
