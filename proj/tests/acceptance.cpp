// Acceptance run: one line per criterion. Each criterion is a verification
// suite plus a wall-time budget; it passes when every check in the suite
// passes and the suite finishes inside the budget.
//
//   acceptance            all criteria
//   acceptance 4 6        selected criteria
//   acceptance -v ...     also print every check

#include "nilquant/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double budget_s;
};

const std::vector<Criterion> kCriteria = {
    {1, "BCH exactness", "lie", 1.0},
    {2, "relation suite", "ccr", 10.0},
    {3, "Weyl composition", "weyl", 1.0},
    {4, "orthogonality relations", "orthogonality", 180.0},
    {5, "inversion and reproducing formulas", "inversion", 180.0},
    {6, "Berezin core", "berezin", 180.0},
    {7, "examples", "examples", 60.0},
    {8, "covariance", "covariance", 120.0},
    {9, "covariant-symbol suite", "covariant", 300.0},
    {10, "pseudo-differential bridge", "pseudodiff", 180.0},
    {11, "tau suite", "tau", 60.0},
    {12, "magnetic suite", "magnetic", 180.0},
    {13, "convergence trend", "convergence", 600.0},
};

}  // namespace

int main(int argc, char** argv) {
  bool verbose = false;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "-v") == 0)
      verbose = true;
    else
      only.insert(std::atoi(argv[i]));
  }

  nilquant::SuiteOptions opts;
  int failed = 0, run = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++run;
    nilquant::Stopwatch sw;
    nilquant::Report rep;
    std::string error;
    try {
      rep = nilquant::find_suite(c.suite).run(opts);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double t = sw.seconds();
    const bool checks_ok = error.empty() && rep.passed();
    const bool in_time = t < c.budget_s;
    const bool ok = checks_ok && in_time;
    if (!ok) ++failed;

    std::string worst;
    for (const auto& ch : rep.checks)
      if (!ch.passed) worst += " " + ch.name;
    std::printf("[%s] %2d %-36s %7.2fs / %4.0fs  %zu checks%s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, t,
                c.budget_s, rep.checks.size(), in_time ? "" : "  over budget", worst.empty() ? "" : "  failed:",
                worst.c_str());
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    if (verbose || !checks_ok)
      for (const auto& ch : rep.checks)
        std::printf("       %s %-48s %.3e <= %.3e  %.2fs %s\n", ch.passed ? "ok  " : "FAIL", ch.name.c_str(),
                    ch.residual, ch.tolerance, ch.seconds, ch.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", run - failed, run);
  return failed == 0 ? 0 : 1;
}
