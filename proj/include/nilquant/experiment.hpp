#pragma once

#include <filesystem>
#include <vector>

#include "nilquant/config.hpp"

namespace nilquant {

struct ExperimentResult {
  OperatorMatrix op;
  Json summary;
  std::vector<std::filesystem::path> files;
};

// Operator of the configured scheme on cfg.operator_grid.
OperatorMatrix quantize(const ExperimentConfig& cfg);

// Trace, Schatten norms (1, 2, inf), Hermiticity residual and unitarity flag;
// for the unit symbol under Berezin-type schemes also max ||K u - u|| / ||u||
// over five seeded Gaussian test vectors.
Json summarize(const ExperimentConfig& cfg, const OperatorMatrix& op);

// Writes <dir>/<prefix>.bin with its sidecar, the field exports and
// <dir>/summary.json.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV exports: symbol on the Xi grid (skipped for point masses), window on the
// operator grid and, when given, the kernel.
std::vector<std::filesystem::path> export_fields(const ExperimentConfig& cfg, const OperatorMatrix* op = nullptr);

}  // namespace nilquant
