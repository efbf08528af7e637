// nilquant: command-line driver.
//
//   nilquant algebra validate [--config c.json | --group SPEC]
//   nilquant quantize --config c.json [--out DIR] [--scheme S] [--tau T] [--potential P] [--seed N] [--csv]
//   nilquant verify --suite NAME [--suite NAME ...] [--seed N] [--tol-scale X] [--out DIR] [--config c.json]
//   nilquant export --config c.json [--out DIR]
//
// Exit status: 0 success / all checks pass, 1 some check failed, 2 usage,
// configuration or I/O error.

#include "nilquant/nilquant.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace nilquant;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read " + path});
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError({path + ": JSON syntax: " + e.what()});
  }
}

struct Overrides {
  std::string config;
  std::string out;
  std::string scheme;
  std::string tau;
  std::string potential;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
  bool csv = false;
};

// CLI flags are patched into the JSON document so they pass the same validation.
ExperimentConfig load(const Overrides& o) {
  Json j = o.config.empty() ? Json::object() : read_json_file(o.config);
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
  if (!o.scheme.empty()) j["scheme"] = o.scheme;
  if (!o.tau.empty()) j["tau"] = o.tau;
  if (!o.potential.empty()) {
    if (fs::is_regular_file(o.potential))
      j["potential"] = read_json_file(o.potential);
    else
      j["potential"] = o.potential;
  }
  if (o.seed) j["seed"] = *o.seed;
  if (o.tol_scale) j["tolerances"]["scale"] = *o.tol_scale;
  if (!o.out.empty()) j["output"]["dir"] = o.out;
  if (o.csv) j["output"]["csv"] = true;
  return parse_config_json(j);
}

int cmd_validate(const std::string& config, const std::string& group) {
  Json spec = "heisenberg:1";
  if (!group.empty()) {
    // Either a preset name or inline JSON.
    spec = group.front() == '{' ? Json::parse(group) : Json(group);
  } else if (!config.empty()) {
    const Json j = read_json_file(config);
    if (j.is_object() && j.contains("group")) spec = j.at("group");
  }
  const Lie L = parse_group(spec);
  const AlgebraReport r = validate_algebra(L);
  std::printf("algebra        %s\n", L.name().c_str());
  std::printf("dimension      %d\n", L.dim());
  std::printf("declared step  %d\n", r.declared_step);
  std::printf("certified step %d\n", r.certified_step);
  std::printf("antisymmetry   %.3e\n", r.antisymmetry_residual);
  std::printf("jacobi         %.3e\n", r.jacobi_residual);
  for (const auto& f : r.failures) std::printf("error: %s\n", f.c_str());
  std::printf("%s\n", r.ok() ? "valid" : "INVALID");
  return r.ok() ? 0 : kExitFail;
}

int cmd_quantize(const Overrides& o) {
  const ExperimentConfig cfg = load(o);
  const ExperimentResult res = run_experiment(cfg);
  const Json& s = res.summary;
  std::printf("scheme %s on %s, %zu operator nodes\n", cfg.scheme.c_str(), cfg.algebra.name().c_str(),
              cfg.operator_grid.size());
  std::printf("trace          %.10g %+.10gi\n", s["trace"][0].get<double>(), s["trace"][1].get<double>());
  std::printf("schatten 1/2/inf %.6g %.6g %.6g\n", s["schatten"]["1"].get<double>(), s["schatten"]["2"].get<double>(),
              s["schatten"]["inf"].get<double>());
  std::printf("hermiticity    %.3e\n", s["hermiticity_residual"].get<double>());
  std::printf("unitary        %s\n", s["unitary"].get<bool>() ? "yes" : "no");
  if (s.contains("identity_residual"))
    std::printf("||K u - u||/||u|| %.3e (5 test vectors)\n", s["identity_residual"].get<double>());
  for (const auto& f : res.files) std::printf("wrote %s\n", f.string().c_str());
  return 0;
}

int cmd_export(const Overrides& o) {
  const ExperimentConfig cfg = load(o);
  const OperatorMatrix op = quantize(cfg);
  for (const auto& f : export_fields(cfg, &op)) std::printf("wrote %s\n", f.string().c_str());
  return 0;
}

int cmd_verify(const std::vector<std::string>& suites, const Overrides& o, bool verbose) {
  SuiteOptions opts;
  if (!o.config.empty()) {
    Overrides base;
    base.config = o.config;
    const ExperimentConfig cfg = load(base);
    opts.seed = cfg.seed;
    opts.tol_scale = cfg.tol_scale;
    if (cfg.group_spec.is_string())
      opts.groups = {cfg.group_spec.get<std::string>()};
    else
      std::fprintf(stderr, "note: inline groups are not used by the suites; running suite defaults\n");
  }
  if (o.seed) opts.seed = *o.seed;
  if (o.tol_scale) opts.tol_scale = *o.tol_scale;
  for (const auto& s : suites) {
    if (s == "all") continue;
    (void)find_suite(s);  // unknown names fail before anything runs
  }

  const Report rep = run_suites(suites, opts);
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    if (!c.passed) ++failed;
    if (verbose || !c.passed)
      std::printf("%s %-52s %.3e <= %.3e  %7.2fs %s\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.residual,
                  c.tolerance, c.seconds, c.note.c_str());
  }
  std::printf("%zu/%zu checks passed (seed %llu, tol-scale %g)\n", rep.checks.size() - failed, rep.checks.size(),
              static_cast<unsigned long long>(opts.seed), opts.tol_scale);
  if (!o.out.empty()) {
    const fs::path path = fs::path(o.out) / "report.json";
    write_json(path, report_to_json(rep, opts.seed, opts.tol_scale));
    std::printf("wrote %s\n", path.string().c_str());
  }
  return rep.passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantization on nilpotent Lie groups: operators, symbols and identity checks"};
  app.require_subcommand(1);

  Overrides o;
  bool verbose = false;
  std::string group;
  std::vector<std::string> suites;

  auto* algebra = app.add_subcommand("algebra", "Structure-constant tools");
  algebra->require_subcommand(1);
  auto* validate = algebra->add_subcommand("validate", "Check antisymmetry, Jacobi and the nilpotency step");
  validate->add_option("--config", o.config, "Config file whose \"group\" entry is checked");
  validate->add_option("--group", group, "Preset name or inline JSON group spec");

  auto add_seed = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { o.seed = s; }, "RNG seed");
  };
  auto* quant = app.add_subcommand("quantize", "Assemble the configured operator and write it with a summary");
  quant->add_option("--config", o.config, "Experiment config (JSON)");
  quant->add_option("--out", o.out, "Output directory");
  quant->add_option("--scheme", o.scheme, "berezin | op | tau | magnetic");
  quant->add_option("--tau", o.tau, "e | id | symmetric | scale:t");
  quant->add_option("--potential", o.potential, "Potential preset (landau:b, linear3:b, zero) or JSON file");
  quant->add_flag("--csv", o.csv, "Also write the kernel as CSV");
  add_seed(quant);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suites, "Suite name (repeatable); 'all' runs the registry")->required();
  verify->add_option("--config", o.config, "Config supplying seed, tolerance scale and group");
  verify->add_option("--out", o.out, "Directory for report.json");
  verify
      ->add_option_function<double>(
          "--tol-scale", [&](const double& t) { o.tol_scale = t; }, "Multiply every tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_flag("-v,--verbose", verbose, "Print every check");
  add_seed(verify);

  auto* exp = app.add_subcommand("export", "Write symbol, window and kernel as CSV");
  exp->add_option("--config", o.config, "Experiment config (JSON)");
  exp->add_option("--out", o.out, "Output directory");

  std::string registry = "suites:";
  for (const auto& s : suite_registry()) registry += " " + s.name;
  app.footer(registry + " all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(o.config, group);
    if (*quant) return cmd_quantize(o);
    if (*verify) return cmd_verify(suites, o, verbose);
    if (*exp) return cmd_export(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
