#include "nilquant/experiment.hpp"

#include "verify_util.hpp"

namespace nilquant {

namespace fs = std::filesystem;

namespace {

bool berezin_type(const ExperimentConfig& cfg) {
  return cfg.scheme == "berezin" || cfg.scheme == "magnetic" || (cfg.scheme == "tau" && cfg.tau_operator == "berezin");
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

OperatorMatrix quantize(const ExperimentConfig& cfg) {
  const Lie& L = cfg.algebra;
  if (cfg.scheme == "op") return op_quantize(L, build_symbol(cfg), cfg.operator_grid);
  if (cfg.scheme == "tau") {
    const TauMap tau = tau_preset(cfg.tau, L);
    if (cfg.tau_operator == "op") return op_quantize_tau(L, build_symbol(cfg), tau, cfg.operator_grid);
    return berezin_tau(berezin_config(cfg), tau);
  }
  if (cfg.scheme == "magnetic") return mag_berezin(berezin_config(cfg), cfg.potential);
  return berezin_matrix(berezin_config(cfg));
}

Json summarize(const ExperimentConfig& cfg, const OperatorMatrix& op) {
  Json s;
  s["scheme"] = cfg.scheme;
  if (cfg.scheme == "tau") s["tau"] = cfg.tau;
  if (cfg.scheme == "magnetic") s["potential"] = cfg.potential.name;
  s["group"] = cfg.algebra.name();
  s["dim"] = cfg.dim();
  s["symbol"] = cfg.symbol.kind;
  s["operator_nodes"] = cfg.operator_grid.size();
  s["xi_nodes"] = cfg.xi_grid.size();
  s["seed"] = cfg.seed;

  s["trace"] = complex_json(op_trace(op));
  const Eigen::VectorXd sv = singular_values(op);
  s["schatten"] = {{"1", schatten_norm_from_singular(sv, 1.0)},
                   {"2", schatten_norm_from_singular(sv, 2.0)},
                   {"inf", schatten_norm_from_singular(sv, std::numeric_limits<double>::infinity())}};
  s["hermiticity_residual"] = hermiticity_residual(op);
  const double smin = sv.size() ? sv.minCoeff() : 0.0, smax = sv.size() ? sv.maxCoeff() : 0.0;
  s["singular_value_range"] = {smin, smax};
  s["unitary"] = sv.size() > 0 && std::abs(smin - 1.0) <= cfg.unitary_tol && std::abs(smax - 1.0) <= cfg.unitary_tol;

  if (cfg.symbol.kind == "one" && cfg.symbol.amp == Complex(1.0) && berezin_type(cfg)) {
    Rng rng(cfg.seed);
    double id = 0.0;
    for (int k = 0; k < 5; ++k) {
      const vu::TestGaussian u = vu::random_gaussian(rng, cfg.dim(), 0.5, 0.8, 1.2, 0.5);
      const CVector us = u.field.sample(cfg.operator_grid);
      id = std::max(id, (op_apply(op, us) - us).norm() / us.norm());
    }
    s["identity_residual"] = id;
    s["identity_test_vectors"] = 5;
  }
  return s;
}

std::vector<fs::path> export_fields(const ExperimentConfig& cfg, const OperatorMatrix* op) {
  const fs::path dir = cfg.output.dir;
  std::vector<fs::path> files;
  const Symbol a = build_symbol(cfg);
  if (!a.is_delta()) {
    files.push_back(dir / "symbol.csv");
    write_field_csv(files.back(), a.as_field(), cfg.xi_grid);
  }
  files.push_back(dir / "window.csv");
  write_field_csv(files.back(), build_window(cfg).field(), cfg.operator_grid);
  if (op) {
    files.push_back(dir / (cfg.output.prefix + ".csv"));
    write_matrix_csv(files.back(), op->kernel());
  }
  return files;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.op = quantize(cfg);
  const fs::path dir = cfg.output.dir;

  const fs::path bin = dir / (cfg.output.prefix + ".bin");
  Json extra{{"group", cfg.algebra.name()}, {"symbol", cfg.symbol.kind}, {"seed", cfg.seed}};
  if (cfg.scheme == "tau") extra["tau"] = cfg.tau;
  if (cfg.scheme == "magnetic") extra["potential"] = cfg.potential.name;
  write_operator_binary(bin, res.op, cfg.scheme, extra);
  res.files = {bin, fs::path(bin.string() + ".json")};

  auto exported = export_fields(cfg, cfg.output.csv ? &res.op : nullptr);
  res.files.insert(res.files.end(), exported.begin(), exported.end());

  res.summary = summarize(cfg, res.op);
  res.summary["config"] = config_to_json(cfg);
  const fs::path summary = dir / "summary.json";
  res.files.push_back(summary);
  Json names = Json::array();
  for (const auto& f : res.files) names.push_back(f.string());
  res.summary["files"] = names;
  write_json(summary, res.summary);
  return res;
}

}  // namespace nilquant
