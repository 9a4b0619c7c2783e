#pragma once

#include <string>
#include <vector>

#include "hpl/graded.hpp"

namespace hpl {

/// One checked equation, stored as "left side minus right side".
struct Check {
  std::string name;
  GradedMap residual;

  bool ok() const { return residual.is_zero(); }
};

/// Result of a validator: every equation it checked plus free-form notes.
struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(std::string name, GradedMap residual) {
    checks.push_back({std::move(name), std::move(residual)});
  }
  void merge(const std::string& prefix, const Report& other) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.residual});
    for (const auto& n : other.notes) notes.push_back(prefix + n);
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  /// Names of failing checks, comma separated.
  std::string failures() const {
    std::string out;
    for (const auto& c : checks)
      if (!c.ok()) out += (out.empty() ? "" : ", ") + c.name;
    return out;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace hpl
