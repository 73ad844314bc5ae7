#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace ucstar {

/// One violated invariant, with enough context to reproduce it.
struct Violation {
  std::string check;    // e.g. "unitality", "adjoint-closure"
  std::string where;    // pair or arrow, e.g. "x|y"
  double residual = 0;  // the measured defect
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string check, std::string where, double residual, std::string detail = {}) {
    violations.push_back({std::move(check), std::move(where), residual, std::move(detail)});
  }
  bool has(const std::string& check) const {
    for (const auto& v : violations)
      if (v.check == check) return true;
    return false;
  }
};

enum class CheckStatus { Pass, Fail, Unknown };

constexpr const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "unknown";
  }
}

/// One named check of a command run.
struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;  // worst measured defect
  std::string witness;
};

/// Outcome of one command: fail if any check failed, else unknown if any
/// check was inconclusive, else pass.
struct RunReport {
  std::string command;
  std::vector<Check> checks;
  std::optional<double> seconds;

  CheckStatus status() const noexcept {
    bool unknown = false;
    for (const auto& c : checks) {
      if (c.status == CheckStatus::Fail) return CheckStatus::Fail;
      unknown = unknown || c.status == CheckStatus::Unknown;
    }
    return unknown ? CheckStatus::Unknown : CheckStatus::Pass;
  }

  void add(Check c) { checks.push_back(std::move(c)); }
  void add(std::string name, bool ok, double residual = 0.0, std::string witness = {}) {
    checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, residual, std::move(witness)});
  }

  /// Deterministic order regardless of how the checks were produced.
  void sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  }

  int exit_code() const noexcept {
    switch (status()) {
      case CheckStatus::Pass: return 0;
      case CheckStatus::Fail: return 1;
      default: return 3;
    }
  }
};

}  // namespace ucstar
