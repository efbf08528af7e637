#pragma once

#include "nilquant/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nilquant {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  double tol_scale = 1.0;
  // Restricts group-parametrized suites to these presets (empty: suite defaults).
  std::vector<std::string> groups;
};

struct SuiteInfo {
  std::string name;
  std::string description;
  std::function<Report(const SuiteOptions&)> run;
};

// Registry in a fixed order; "all" is accepted by run_suites but not listed.
const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo& find_suite(const std::string& name);  // throws std::invalid_argument

// Runs the named suites in order; "all" expands to the whole registry.
Report run_suites(const std::vector<std::string>& names, const SuiteOptions& opts);

Report suite_lie(const SuiteOptions& o);
Report suite_ccr(const SuiteOptions& o);
Report suite_weyl(const SuiteOptions& o);
Report suite_orthogonality(const SuiteOptions& o);
Report suite_inversion(const SuiteOptions& o);
Report suite_berezin(const SuiteOptions& o);
Report suite_examples(const SuiteOptions& o);
Report suite_covariance(const SuiteOptions& o);
Report suite_covariant(const SuiteOptions& o);
Report suite_pseudodiff(const SuiteOptions& o);
Report suite_tau(const SuiteOptions& o);
Report suite_magnetic(const SuiteOptions& o);
Report suite_convergence(const SuiteOptions& o);

}  // namespace nilquant
