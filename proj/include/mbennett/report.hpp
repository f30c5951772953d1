#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mbennett {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string claim;  // the property being checked, in words
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool pass, double residual, std::string claim) {
    checks.push_back({std::move(name), pass, residual, std::move(claim)});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace mbennett
