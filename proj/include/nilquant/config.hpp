#pragma once

// JSON experiment configuration. Every field has a default; parse_config
// fills them, validates the whole document and reports every violation at
// once through ConfigError.
//
//   {
//     "group": "heisenberg:1" | {"dim": 3, "step": 2, "constants": [[1, 2, 3, 1], [2, 1, 3, -1]]},
//     "grid": {"operator": {"L": 4, "N": 11}, "xi_group": {...}, "xi_dual": {...}},
//     "window": {"sigma": 1, "center": [0, 0, 0]},
//     "symbol": {"kind": "gaussian", "x0": [..], "sx": 1, "xi0": [..], "sxi": 1, "amp": [1, 0]},
//     "scheme": "berezin" | "op" | "tau" | "magnetic",
//     "tau": "symmetric", "tau_operator": "op" | "berezin",
//     "potential": "zero" | "landau:b" | "linear3:b" | {"components": [[{"coef": c, "powers": [..]}], ..]},
//     "output": {"dir": "nilquant-out", "prefix": "operator", "csv": false},
//     "tolerances": {"scale": 1, "unitary": 1e-6},
//     "seed": 20240917,
//     "allow_large": false
//   }

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nilquant/berezin.hpp"
#include "nilquant/io.hpp"
#include "nilquant/magnetic.hpp"
#include "nilquant/tau.hpp"
#include "nilquant/verify.hpp"

namespace nilquant {

// Cost guards, lifted by "allow_large": true.
inline constexpr double kMaxOperatorNodes = 5000;
inline constexpr double kMaxXiNodes = 1e7;

struct ConfigError : std::runtime_error {
  std::vector<std::string> errors;
  explicit ConfigError(std::vector<std::string> errs);
};

struct SymbolSpec {
  // one | gaussian | mult | conv | delta | weyl_exponential
  std::string kind = "one";
  Vec x0;            // gaussian, mult: x-centre
  double sx = 1.0;   // gaussian, mult: x-width
  DualVec xi0;       // gaussian, conv: xi-centre
  double sxi = 1.0;  // gaussian, conv: xi-width
  Complex amp = 1.0;
  Vec z;  // delta, weyl_exponential
  DualVec zeta;
};

struct OutputSpec {
  std::string dir = "nilquant-out";
  std::string prefix = "operator";
  bool csv = false;  // also write the kernel as CSV
};

struct ExperimentConfig {
  Lie algebra;
  Json group_spec;
  Grid operator_grid;
  XiGrid xi_grid;
  double window_sigma = 1.0;
  Vec window_center;
  SymbolSpec symbol;
  std::string scheme = "berezin";
  std::string tau = "symmetric";
  std::string tau_operator = "op";
  Json potential_spec = "zero";
  VectorPotential potential;
  OutputSpec output;
  double tol_scale = 1.0;
  double unitary_tol = 1e-6;
  std::uint64_t seed = kDefaultSeed;
  bool allow_large = false;

  int dim() const { return algebra.dim(); }
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
Json config_to_json(const ExperimentConfig& cfg);

// Group spec without the validation pass: preset name or inline 1-based
// structure constants, stored verbatim. Throws ConfigError on malformed input.
Lie parse_group(const Json& spec);
VectorPotential parse_potential(const Json& spec, int n);

Window build_window(const ExperimentConfig& cfg);
Symbol build_symbol(const ExperimentConfig& cfg);
BerezinConfig berezin_config(const ExperimentConfig& cfg);

}  // namespace nilquant
