#include <doctest.h>
#include <unistd.h>

#include <fstream>
#include <iterator>

#include "nilquant/experiment.hpp"
#include "nilquant/io.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nilquant_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> config_errors(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.errors;
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& e : v)
    if (e.find(s) != std::string::npos) return true;
  return false;
}

OperatorMatrix random_operator(const Grid& g, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(g.size());
  CMatrix K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) K(i, j) = {rng.uniform(-1, 1) * 1e3, rng.uniform(-1, 1) * 1e-7};
  return OperatorMatrix(g, K);
}

}  // namespace

TEST_CASE("binary matrix round trip is exact and little-endian") {
  TempDir tmp;
  const Grid g(Vec::Constant(2, 1.5), {3, 4});
  const OperatorMatrix op = random_operator(g, 1);
  const fs::path p = tmp.path / "m.bin";
  write_operator_binary(p, op, "berezin", {{"group", "abelian:2"}});
  CHECK(fs::file_size(p) == 12 * 12 * 16);
  const OperatorMatrix back = read_operator_binary(p);
  CHECK(back.grid() == g);
  CHECK((back.kernel() - op.kernel()).cwiseAbs().maxCoeff() == 0.0);

  const Json side = read_sidecar(p);
  CHECK(side["format"] == "complex128-le");
  CHECK(side["order"] == "row-major");
  CHECK(side["scheme"] == "berezin");
  CHECK(side["rows"] == 12);
  CHECK(side["paper_check_version"] == kPaperCheckVersion);
  CHECK(side["group"] == "abelian:2");
  CHECK(side["weight"].get<double>() == g.cell_volume());

  // First entry, real part, byte by byte.
  const std::string bytes = slurp(p);
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[k])) << (8 * k);
  CHECK(std::bit_cast<double>(bits) == op.kernel()(0, 0).real());

  fs::resize_file(p, 100);
  CHECK_THROWS_AS(read_operator_binary(p), IoError);
  CHECK_THROWS_AS(read_operator_binary(tmp.path / "missing.bin"), IoError);
}

TEST_CASE("CSV matrix round trip keeps every digit") {
  TempDir tmp;
  const OperatorMatrix op = random_operator(Grid::uniform(1, 1.0, 5), 2);
  write_matrix_csv(tmp.path / "k.csv", op.kernel());
  const CMatrix back = read_matrix_csv(tmp.path / "k.csv");
  CHECK(back.rows() == 5);
  CHECK(back.cols() == 5);
  CHECK((back - op.kernel()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field CSV lists node coordinates then values") {
  TempDir tmp;
  const Grid g = Grid::uniform(2, 1.0, 2);
  write_field_csv(tmp.path / "f.csv", constant_field(Domain::Group, 2, Complex(1.5, -2.0)), g);
  std::ifstream in(tmp.path / "f.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "x1,x2,re,im");
  CHECK(row == "-0.5,-0.5,1.5,-2");

  const XiGrid xi = XiGrid::uniform(1, 1.0, 2);
  write_field_csv(tmp.path / "xi.csv", constant_field(Domain::Phase, 2, 1.0), xi);
  std::ifstream in2(tmp.path / "xi.csv");
  std::getline(in2, header);
  CHECK(header == "z1,zeta1,re,im");
}

TEST_CASE("report JSON") {
  Report r;
  r.add("a.ok", 1e-12, 1e-10, 0.5);
  r.add("b.bad", 1.0, 1e-3, 0.1, "note");
  r.add("c.nan", NAN, 1.0);
  const Json j = report_to_json(r, 99, 2.0);
  CHECK(j["seed"] == 99);
  CHECK(j["passed"] == false);
  CHECK(j["failed"] == 2);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["name"] == "a.ok");
  CHECK(j["checks"][0]["passed"] == true);
  CHECK(j["checks"][1]["note"] == "note");
  CHECK(j["checks"][2]["residual"].is_null());
}

TEST_CASE("minimal config fills defaults") {
  const ExperimentConfig cfg = parse_config(R"({"group": "heisenberg:1"})");
  CHECK(cfg.dim() == 3);
  CHECK(cfg.scheme == "berezin");
  CHECK(cfg.symbol.kind == "one");
  CHECK(cfg.operator_grid == default_operator_grid(3));
  CHECK(cfg.xi_grid == default_xi_grid(3));
  CHECK(cfg.window_sigma == 1.0);
  CHECK(cfg.window_center.size() == 3);
  CHECK(cfg.seed == kDefaultSeed);
  CHECK(cfg.potential.zero);
  // The normalized form parses back to the same grids.
  const ExperimentConfig again = parse_config_json(config_to_json(cfg));
  CHECK(again.operator_grid == cfg.operator_grid);
  CHECK(again.xi_grid == cfg.xi_grid);
}

TEST_CASE("inline groups are stored verbatim and validated") {
  const auto errs = config_errors(R"({"group": {"dim": 3, "constants": [[1, 2, 3, 1]]}})");
  REQUIRE(errs.size() == 1);
  CHECK(any_contains(errs, "antisymmetry: c[1][2][3] + c[2][1][3]"));

  const ExperimentConfig ok =
      parse_config(R"({"group": {"dim": 3, "step": 2, "constants": [[1, 2, 3, 1], [2, 1, 3, -1]]}})");
  CHECK(ok.algebra.dim() == 3);
  CHECK(ok.algebra.step() == 2);

  CHECK(any_contains(config_errors(R"({"group": {"dim": 8, "step": 7}})"), "exceeds the supported maximum 6"));
  CHECK(any_contains(config_errors(R"({"group": {"dim": 2, "constants": [[1, 2, 3, 1]]}})"), "out of range"));
  CHECK(any_contains(config_errors(R"({"group": "lorentz"})"), "unknown algebra preset"));
  // [e1,e2] = e1 is solvable, not nilpotent.
  CHECK(any_contains(config_errors(R"({"group": {"dim": 2, "constants": [[1, 2, 1, 1], [2, 1, 1, -1]]}})"),
                     "not nilpotent"));
}

TEST_CASE("every violation is reported") {
  const auto errs = config_errors(R"({
    "group": "abelian:3",
    "grid": {"xi_group": {"N": 64}, "xi_dual": {"N": 64}, "operator": {"L": [1, 2]}},
    "window": {"sigma": -1, "center": [0, 0]},
    "symbol": {"kind": "wavelet", "colour": 1},
    "scheme": "quantum",
    "potential": "landau:1",
    "extra": true
  })");
  CHECK(any_contains(errs, "extra: unknown key"));
  CHECK(any_contains(errs, "symbol.colour: unknown key"));
  CHECK(any_contains(errs, "grid.xi: "));
  CHECK(any_contains(errs, "allow_large"));
  CHECK(any_contains(errs, "grid.operator.L: dimension mismatch"));
  CHECK(any_contains(errs, "window.sigma"));
  CHECK(any_contains(errs, "window.center: dimension mismatch"));
  CHECK(any_contains(errs, "symbol.kind"));
  CHECK(any_contains(errs, "scheme"));
  CHECK(any_contains(errs, "potential: dimension mismatch"));
  CHECK(errs.size() == 9);
  CHECK(any_contains(config_errors("{"), "JSON syntax"));
}

TEST_CASE("cost guards and their override") {
  const std::string big = R"({"group": "abelian:3", "grid": {"xi_group": {"N": 64}, "xi_dual": {"N": 64}})";
  CHECK(any_contains(config_errors(big + "}"), "set \"allow_large\": true"));
  CHECK(config_errors(big + R"(, "allow_large": true})").empty());
  CHECK(any_contains(config_errors(R"({"group": "abelian:2", "grid": {"operator": {"N": 80}}})"), "grid.operator"));
}

TEST_CASE("potentials from presets and polynomials") {
  const ExperimentConfig cfg = parse_config(R"({"group": "abelian:2", "scheme": "magnetic",
    "potential": {"components": [[{"coef": -0.35, "powers": [0, 1]}], [{"coef": 0.35, "powers": [1, 0]}]]}})");
  Vec x(2);
  x << 0.4, -1.0;
  const VectorPotential ref = VectorPotential::landau(0.7);
  CHECK((cfg.potential(x) - ref(x)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(any_contains(config_errors(R"({"group": "abelian:2", "potential": {"components": [[]]}})"), "2 polynomials"));
}

TEST_CASE("experiments: Berezin unit symbol reports the identity residual") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config(R"({"group": "abelian:1"})");
  cfg.output.dir = tmp.path.string();
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.summary["identity_residual"].get<double>() <= 5e-2);
  CHECK(res.summary["hermiticity_residual"].get<double>() <= 1e-10);
  CHECK(res.summary["schatten"].contains("inf"));
  for (const auto& f : res.files) CHECK(fs::exists(f));
  CHECK(fs::exists(tmp.path / "summary.json"));
  CHECK(fs::exists(tmp.path / "symbol.csv"));
  CHECK(fs::exists(tmp.path / "window.csv"));
  const OperatorMatrix back = read_operator_binary(tmp.path / "operator.bin");
  CHECK((back.kernel() - res.op.kernel()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("experiments: Op(eps) of a pure modulation is unitary") {
  ExperimentConfig cfg = parse_config(R"({"group": "abelian:1", "scheme": "op",
    "symbol": {"kind": "weyl_exponential", "zeta": [0.7]}})");
  const Json s = summarize(cfg, quantize(cfg));
  CHECK(s["unitary"] == true);
  ExperimentConfig g = parse_config(R"({"group": "abelian:1", "scheme": "op", "symbol": {"kind": "gaussian"}})");
  CHECK(summarize(g, quantize(g))["unitary"] == false);
}

TEST_CASE("experiments: zero potential is byte-identical to Berezin") {
  TempDir tmp;
  const std::string base = R"({"group": "abelian:2", "symbol": {"kind": "gaussian", "sx": 1.2, "sxi": 0.9}, )";
  ExperimentConfig b = parse_config(base + R"("scheme": "berezin"})");
  ExperimentConfig m = parse_config(base + R"("scheme": "magnetic", "potential": "zero"})");
  b.output.dir = (tmp.path / "b").string();
  m.output.dir = (tmp.path / "m").string();
  run_experiment(b);
  run_experiment(m);
  CHECK(slurp(tmp.path / "b" / "operator.bin") == slurp(tmp.path / "m" / "operator.bin"));
}

TEST_CASE("unwritable output paths are reported with the path") {
  TempDir tmp;
  std::ofstream(tmp.path / "file") << "x";
  try {
    write_json(tmp.path / "file" / "sub" / "a.json", Json::object());
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("file") != std::string::npos);
  }
}
