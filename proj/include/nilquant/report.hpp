#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace nilquant {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string note;
};

// Residual-vs-tolerance table; a check passes when residual <= tolerance
// (NaN never passes).
struct Report {
  std::vector<CheckResult> checks;

  CheckResult& add(std::string name, double residual, double tolerance, double seconds = 0.0, std::string note = {}) {
    CheckResult c{std::move(name), residual, tolerance, residual <= tolerance && !std::isnan(residual), seconds,
                  std::move(note)};
    checks.push_back(std::move(c));
    return checks.back();
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nilquant
