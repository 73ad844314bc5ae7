// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ucstar/io/json.hpp"
#include "ucstar/suites.hpp"

using namespace ucstar;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<std::vector<Check>()> run;
};

Check determinism() {
  suites::Tally t("determinism");
  for (const auto& name : suites::suite_names()) {
    t.instance();
    const suites::SuiteOptions o{12, 0.2, default_coset_budget};
    const std::string first = io::report_to_json(suites::run_suite(name, o)).dump(2);
    const std::string second = io::report_to_json(suites::run_suite(name, o)).dump(2);
    if (first != second) t.fail("suite " + name + ": reports differ");
  }
  for (const auto& name : suites::suite_names()) {
    t.instance();
    const std::string a = io::report_to_json(suites::run_suite(name, {5, 0.1, default_coset_budget})).dump();
    const std::string b = io::report_to_json(suites::run_suite(name, {6, 0.1, default_coset_budget})).dump();
    if (name == "mc" && a == b) t.fail("suite mc: different seeds gave identical reports");
  }
  return t.done("each suite run twice at the same seed");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "unitarization", [] { return std::vector{suites::unitarization(101, 500)}; }},
      {2, "monoidality of C*_max", [] { return std::vector{suites::monoidality()}; }},
      {3, "adjunction round trips", [] { return std::vector{suites::adjunction(103, 200)}; }},
      {4, "fundamental groupoids", [] { return std::vector{suites::fundamental_groupoids(10000)}; }},
      {5, "factorizations", [] { return std::vector{suites::factorizations(105, 100)}; }},
      {6, "lifts", [] { return std::vector{suites::lifts(106, 100)}; }},
      {7, "cofibrant generation coherence", [] { return std::vector{suites::rlp_coherence(107, 200)}; }},
      {8, "2-out-of-3 and retracts",
       [] { return std::vector{suites::two_out_of_three(108, 100), suites::retracts(1108, 50)}; }},
      {9, "norm-decreasing and isometric", [] { return std::vector{suites::norm_decreasing(109, 1000)}; }},
      {10, "presentation norm bounds", [] { return std::vector{suites::norm_bounds(110, 500)}; }},
      {11, "exponential law", [] { return std::vector{suites::exponential_law(111, 100)}; }},
      {12, "determinism", [] { return std::vector{determinism()}; }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      checks.push_back({c.title, CheckStatus::Fail, 0.0, std::string("uncaught: ") + e.what()});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (const auto& k : checks) {
      pass = pass && k.status == CheckStatus::Pass;
      worst = std::max(worst, k.residual);
      detail += (detail.empty() ? "" : " | ") + k.name + " " + to_string(k.status) + ": " + k.witness;
    }
    failed += !pass;
    std::printf("AC%-2d %s  %s  (max residual %.3g, %.1fs)  %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), worst,
                secs, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
