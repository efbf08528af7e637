#include "nilquant/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace nilquant {

namespace {

const std::set<std::string> kSymbolKinds = {"one", "gaussian", "mult", "conv", "delta", "weyl_exponential"};
const std::set<std::string> kSchemes = {"berezin", "op", "tau", "magnetic"};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k];
  return s;
}

std::string type_name(const Json& j) { return j.type_name(); }

// Collects violations instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& where, const std::string& msg) { errors.push_back(where + ": " + msg); }

  bool object(const Json& j, const std::string& where) {
    if (j.is_object()) return true;
    fail(where, std::string("expected an object, got ") + type_name(j));
    return false;
  }

  void keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key())) {
        std::vector<std::string> names(allowed.begin(), allowed.end());
        fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key (allowed: " + join(names, ", ") + ")");
      }
  }

  double number(const Json& obj, const char* key, const std::string& where, double def, bool positive) {
    if (!obj.contains(key)) return def;
    const Json& v = obj.at(key);
    if (!v.is_number()) {
      fail(where + "." + key, std::string("expected a number, got ") + type_name(v));
      return def;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d) || (positive && d <= 0.0)) {
      fail(where + "." + key, positive ? "must be a positive number" : "must be finite");
      return def;
    }
    return d;
  }

  bool boolean(const Json& obj, const char* key, const std::string& where, bool def) {
    if (!obj.contains(key)) return def;
    if (!obj.at(key).is_boolean()) {
      fail(where + "." + key, "expected true or false");
      return def;
    }
    return obj.at(key).get<bool>();
  }

  std::string string(const Json& obj, const char* key, const std::string& where, std::string def) {
    if (!obj.contains(key)) return def;
    if (!obj.at(key).is_string() || obj.at(key).get<std::string>().empty()) {
      fail(where + "." + key, "expected a non-empty string");
      return def;
    }
    return obj.at(key).get<std::string>();
  }

  // Vector of length n; absent means zero.
  Vec vec(const Json& obj, const char* key, const std::string& where, int n) {
    Vec out = Vec::Zero(n);
    if (!obj.contains(key)) return out;
    const Json& v = obj.at(key);
    if (!v.is_array()) {
      fail(where + "." + key, "expected an array of " + std::to_string(n) + " numbers");
      return out;
    }
    if (static_cast<int>(v.size()) != n) {
      fail(where + "." + key,
           "dimension mismatch: expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
      return out;
    }
    for (int k = 0; k < n; ++k) {
      if (!v[static_cast<std::size_t>(k)].is_number()) {
        fail(where + "." + key, "entry " + std::to_string(k + 1) + " is not a number");
        continue;
      }
      out(k) = v[static_cast<std::size_t>(k)].get<double>();
    }
    return out;
  }

  // Scalar (all axes) or array of n entries.
  template <typename T>
  std::vector<T> per_axis(const Json& obj, const char* key, const std::string& where, int n,
                          const std::vector<T>& def) {
    if (!obj.contains(key)) return def;
    const Json& v = obj.at(key);
    auto one = [&](const Json& e, T& out) {
      if (!e.is_number() || (std::is_integral_v<T> && !e.is_number_integer()) || e.get<double>() <= 0) {
        fail(where + "." + key, std::is_integral_v<T> ? "expected positive integers" : "expected positive numbers");
        return false;
      }
      out = e.get<T>();
      return true;
    };
    std::vector<T> out = def;
    if (v.is_array()) {
      if (static_cast<int>(v.size()) != n) {
        fail(where + "." + key,
             "dimension mismatch: expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
        return def;
      }
      for (int k = 0; k < n; ++k)
        if (!one(v[static_cast<std::size_t>(k)], out[static_cast<std::size_t>(k)])) return def;
      return out;
    }
    T s{};
    if (!one(v, s)) return def;
    return std::vector<T>(static_cast<std::size_t>(n), s);
  }

  Grid grid(const Json& root, const char* key, const Grid& def) {
    const std::string where = std::string("grid.") + key;
    if (!root.contains(key)) return def;
    const Json& g = root.at(key);
    if (!object(g, where)) return def;
    keys(g, where, {"L", "N"});
    const int n = def.dim();
    std::vector<double> L0(def.half_width().data(), def.half_width().data() + n);
    auto L = per_axis<double>(g, "L", where, n, L0);
    auto N = per_axis<int>(g, "N", where, n, def.counts());
    Vec hw(n);
    for (int k = 0; k < n; ++k) hw(k) = L[static_cast<std::size_t>(k)];
    return Grid(hw, N);
  }
};

double node_count(const std::vector<int>& counts) {
  double s = 1.0;
  for (int c : counts) s *= c;
  return s;
}

Symbol scaled(const Symbol& s, Complex amp) {
  if (amp == Complex(1.0) || !s.has_closed_form()) return s;
  std::vector<SymbolTerm> terms = s.terms();
  for (auto& t : terms) t.coeff *= amp;
  return Symbol::from_terms(s.dim(), std::move(terms));
}

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json grid_spec(const Grid& g) { return {{"L", vec_json(g.half_width())}, {"N", g.counts()}}; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error("invalid configuration:\n  " + join(errs, "\n  ")), errors(std::move(errs)) {}

Lie parse_group(const Json& spec) {
  if (spec.is_string()) {
    try {
      return Lie::preset(spec.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError({std::string("group: ") + e.what() + " (presets: abelian:n, heisenberg:d, engel, upper:k)"});
    }
  }
  Reader r;
  if (!r.object(spec, "group")) throw ConfigError(r.errors);
  r.keys(spec, "group", {"dim", "step", "constants", "name"});
  int n = 0;
  if (!spec.contains("dim") || !spec.at("dim").is_number_integer()) {
    r.fail("group.dim", "required positive integer");
  } else {
    n = spec.at("dim").get<int>();
    if (n < 1 || 2 * n > kMaxDim) {
      r.fail("group.dim", "must lie in 1.." + std::to_string(kMaxDim / 2));
      n = 0;
    }
  }
  int step = 0;
  if (spec.contains("step")) {
    if (!spec.at("step").is_number_integer() || spec.at("step").get<int>() < 1) {
      r.fail("group.step", "expected a positive integer");
    } else {
      step = spec.at("step").get<int>();
      if (step > kMaxBchDepth)
        r.fail("group.step", std::to_string(step) + " exceeds the supported maximum " + std::to_string(kMaxBchDepth));
    }
  }
  std::vector<Lie::Entry> entries;
  if (spec.contains("constants")) {
    const Json& c = spec.at("constants");
    if (!c.is_array()) r.fail("group.constants", "expected an array of [i, j, k, c] entries");
    for (std::size_t t = 0; c.is_array() && t < c.size(); ++t) {
      const Json& e = c[t];
      const std::string where = "group.constants[" + std::to_string(t) + "]";
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer() || !e[3].is_number()) {
        r.fail(where, "expected [i, j, k, c] with 1-based integer indices");
        continue;
      }
      const int i = e[0].get<int>(), j = e[1].get<int>(), k = e[2].get<int>();
      if (n > 0 && (i < 1 || j < 1 || k < 1 || i > n || j > n || k > n)) {
        r.fail(where, "index out of range 1.." + std::to_string(n));
        continue;
      }
      entries.push_back({i - 1, j - 1, k - 1, e[3].get<double>()});
    }
  }
  const std::string name = spec.value("name", "custom");
  if (!r.errors.empty() || n == 0) {
    if (r.errors.empty()) r.fail("group", "invalid");
    throw ConfigError(r.errors);
  }
  return Lie(n, std::move(entries), step, name);
}

VectorPotential parse_potential(const Json& spec, int n) {
  if (spec.is_string()) {
    std::string name = spec.get<std::string>();
    if (name == "zero") return VectorPotential::zero_potential(n);
    VectorPotential A;
    try {
      A = VectorPotential::preset(name);
    } catch (const std::exception& e) {
      throw ConfigError({std::string("potential: ") + e.what()});
    }
    if (A.dim != n)
      throw ConfigError({"potential: dimension mismatch: preset '" + name + "' is " + std::to_string(A.dim) +
                         "-dimensional, group is " + std::to_string(n) + "-dimensional"});
    return A;
  }
  Reader r;
  if (!r.object(spec, "potential")) throw ConfigError(r.errors);
  r.keys(spec, "potential", {"components", "name"});
  std::vector<Polynomial> comps;
  const Json c = spec.value("components", Json());
  if (!c.is_array() || static_cast<int>(c.size()) != n) {
    r.fail("potential.components", "expected " + std::to_string(n) + " polynomials, one per coordinate");
  } else {
    for (int k = 0; k < n; ++k) {
      const Json& poly = c[static_cast<std::size_t>(k)];
      const std::string where = "potential.components[" + std::to_string(k) + "]";
      Polynomial p;
      if (!poly.is_array()) {
        r.fail(where, "expected an array of monomials");
        comps.push_back(p);
        continue;
      }
      for (const Json& m : poly) {
        if (!r.object(m, where)) continue;
        r.keys(m, where, {"coef", "powers"});
        const Vec pw = r.vec(m, "powers", where, n);
        Monomial mono;
        mono.coef = r.number(m, "coef", where, 0.0, false);
        for (int q = 0; q < n; ++q) {
          if (pw(q) < 0 || pw(q) != std::floor(pw(q))) r.fail(where + ".powers", "expected non-negative integers");
          mono.powers.push_back(static_cast<int>(pw(q)));
        }
        p.push_back(std::move(mono));
      }
      comps.push_back(std::move(p));
    }
  }
  if (!r.errors.empty()) throw ConfigError(r.errors);
  return VectorPotential::polynomial(n, comps, spec.value("name", "polynomial"));
}

ExperimentConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("JSON syntax: ") + e.what()});
  }
  return parse_config_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig parse_config_json(const Json& j) {
  Reader r;
  ExperimentConfig cfg;
  if (!r.object(j, "config")) throw ConfigError(r.errors);
  r.keys(j, "",
         {"group", "grid", "window", "symbol", "scheme", "tau", "tau_operator", "potential", "output", "tolerances",
          "seed", "allow_large"});

  // The group fixes every dimension, so nothing dimension-dependent is
  // checked when it is unusable.
  cfg.group_spec = j.value("group", Json("heisenberg:1"));
  int n = 0;
  try {
    cfg.algebra = parse_group(cfg.group_spec);
    const AlgebraReport ar = validate_algebra(cfg.algebra);
    for (const auto& f : ar.failures) r.fail("group", f);
    if (ar.ok()) n = cfg.algebra.dim();
  } catch (const ConfigError& e) {
    r.errors.insert(r.errors.end(), e.errors.begin(), e.errors.end());
  }

  cfg.allow_large = r.boolean(j, "allow_large", "config", false);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned())
      r.fail("seed", "expected a non-negative integer");
    else
      cfg.seed = j.at("seed").get<std::uint64_t>();
  }

  cfg.scheme = r.string(j, "scheme", "config", cfg.scheme);
  if (!kSchemes.count(cfg.scheme)) r.fail("scheme", "'" + cfg.scheme + "' is not one of berezin, op, tau, magnetic");
  cfg.tau = r.string(j, "tau", "config", cfg.tau);
  cfg.tau_operator = r.string(j, "tau_operator", "config", cfg.tau_operator);
  if (cfg.tau_operator != "op" && cfg.tau_operator != "berezin") r.fail("tau_operator", "expected op or berezin");

  const Json out = j.value("output", Json::object());
  if (r.object(out, "output")) {
    r.keys(out, "output", {"dir", "prefix", "csv"});
    cfg.output.dir = r.string(out, "dir", "output", cfg.output.dir);
    cfg.output.prefix = r.string(out, "prefix", "output", cfg.output.prefix);
    cfg.output.csv = r.boolean(out, "csv", "output", cfg.output.csv);
  }
  const Json tol = j.value("tolerances", Json::object());
  if (r.object(tol, "tolerances")) {
    r.keys(tol, "tolerances", {"scale", "unitary"});
    cfg.tol_scale = r.number(tol, "scale", "tolerances", cfg.tol_scale, true);
    cfg.unitary_tol = r.number(tol, "unitary", "tolerances", cfg.unitary_tol, true);
  }

  const Json grid = j.value("grid", Json::object());
  const Json window = j.value("window", Json::object());
  const Json sym = j.value("symbol", Json::object());
  cfg.potential_spec = j.value("potential", Json("zero"));
  if (n == 0) {
    // Still report unknown keys in the nested objects.
    if (grid.is_object()) r.keys(grid, "grid", {"operator", "xi_group", "xi_dual"});
    if (window.is_object()) r.keys(window, "window", {"sigma", "center"});
    throw ConfigError(r.errors);
  }

  if (r.object(grid, "grid")) {
    r.keys(grid, "grid", {"operator", "xi_group", "xi_dual"});
    const XiGrid dxi = default_xi_grid(n);
    cfg.operator_grid = r.grid(grid, "operator", default_operator_grid(n));
    cfg.xi_grid = XiGrid(r.grid(grid, "xi_group", dxi.g_grid), r.grid(grid, "xi_dual", dxi.dual_grid));
  }
  const double op_nodes = node_count(cfg.operator_grid.counts());
  const double xi_nodes = node_count(cfg.xi_grid.g_grid.counts()) * node_count(cfg.xi_grid.dual_grid.counts());
  if (!cfg.allow_large) {
    if (op_nodes > kMaxOperatorNodes)
      r.fail("grid.operator", std::to_string(static_cast<long long>(op_nodes)) + " nodes exceed the guard of " +
                                  std::to_string(static_cast<long long>(kMaxOperatorNodes)) +
                                  "; set \"allow_large\": true to override");
    if (xi_nodes > kMaxXiNodes)
      r.fail("grid.xi", std::to_string(static_cast<long long>(xi_nodes)) + " phase-space nodes exceed the guard of " +
                            std::to_string(static_cast<long long>(kMaxXiNodes)) +
                            "; set \"allow_large\": true to override");
  }

  if (r.object(window, "window")) {
    r.keys(window, "window", {"sigma", "center"});
    cfg.window_sigma = r.number(window, "sigma", "window", 1.0, true);
    cfg.window_center = r.vec(window, "center", "window", n);
  }

  if (r.object(sym, "symbol")) {
    r.keys(sym, "symbol", {"kind", "x0", "sx", "xi0", "sxi", "amp", "z", "zeta"});
    SymbolSpec& s = cfg.symbol;
    s.kind = r.string(sym, "kind", "symbol", s.kind);
    if (!kSymbolKinds.count(s.kind))
      r.fail("symbol.kind", "'" + s.kind + "' is not one of one, gaussian, mult, conv, delta, weyl_exponential");
    s.x0 = r.vec(sym, "x0", "symbol", n);
    s.xi0 = r.vec(sym, "xi0", "symbol", n);
    s.z = r.vec(sym, "z", "symbol", n);
    s.zeta = r.vec(sym, "zeta", "symbol", n);
    s.sx = r.number(sym, "sx", "symbol", 1.0, true);
    s.sxi = r.number(sym, "sxi", "symbol", 1.0, true);
    if (sym.contains("amp")) {
      const Json& a = sym.at("amp");
      if (a.is_number())
        s.amp = a.get<double>();
      else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number())
        s.amp = {a[0].get<double>(), a[1].get<double>()};
      else
        r.fail("symbol.amp", "expected a number or [re, im]");
    }
    if (s.kind == "delta" && s.amp != Complex(1.0)) r.fail("symbol.amp", "a delta symbol has unit amplitude");
    const bool op_like = cfg.scheme == "op" || (cfg.scheme == "tau" && cfg.tau_operator == "op");
    if (s.kind == "delta" && op_like) r.fail("symbol.kind", "delta symbols are quantized by berezin-type schemes only");
  }
  if (cfg.scheme == "tau" || j.contains("tau")) {
    try {
      (void)tau_preset(cfg.tau, cfg.algebra);
    } catch (const std::exception& e) {
      r.fail("tau", e.what());
    }
  }
  try {
    cfg.potential = parse_potential(cfg.potential_spec, n);
  } catch (const ConfigError& e) {
    r.errors.insert(r.errors.end(), e.errors.begin(), e.errors.end());
  }
  if (!r.errors.empty()) throw ConfigError(r.errors);
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["group"] = cfg.group_spec;
  j["grid"]["operator"] = grid_spec(cfg.operator_grid);
  j["grid"]["xi_group"] = grid_spec(cfg.xi_grid.g_grid);
  j["grid"]["xi_dual"] = grid_spec(cfg.xi_grid.dual_grid);
  j["window"] = {{"sigma", cfg.window_sigma}, {"center", vec_json(cfg.window_center)}};
  const SymbolSpec& s = cfg.symbol;
  j["symbol"] = {{"kind", s.kind},     {"x0", vec_json(s.x0)},
                 {"sx", s.sx},         {"xi0", vec_json(s.xi0)},
                 {"sxi", s.sxi},       {"amp", {s.amp.real(), s.amp.imag()}},
                 {"z", vec_json(s.z)}, {"zeta", vec_json(s.zeta)}};
  j["scheme"] = cfg.scheme;
  j["tau"] = cfg.tau;
  j["tau_operator"] = cfg.tau_operator;
  j["potential"] = cfg.potential_spec;
  j["output"] = {{"dir", cfg.output.dir}, {"prefix", cfg.output.prefix}, {"csv", cfg.output.csv}};
  j["tolerances"] = {{"scale", cfg.tol_scale}, {"unitary", cfg.unitary_tol}};
  j["seed"] = cfg.seed;
  j["allow_large"] = cfg.allow_large;
  return j;
}

Window build_window(const ExperimentConfig& cfg) {
  return Window::gaussian(cfg.dim(), cfg.window_sigma, cfg.window_center, cfg.operator_grid);
}

Symbol build_symbol(const ExperimentConfig& cfg) {
  const SymbolSpec& s = cfg.symbol;
  const int n = cfg.dim();
  if (s.kind == "one") return scaled(Symbol::one(n), s.amp);
  if (s.kind == "gaussian") return Symbol::gaussian(s.x0, s.sx, s.xi0, s.sxi, s.amp);
  if (s.kind == "mult") return Symbol::mult(gaussian_field(Domain::Group, s.x0, s.sx, Vec::Zero(n)).scaled(s.amp));
  if (s.kind == "conv") return scaled(Symbol::conv(s.xi0, s.sxi), s.amp);
  if (s.kind == "delta") return Symbol::delta(PhasePoint(s.z, s.zeta));
  if (s.kind == "weyl_exponential") return scaled(Symbol::weyl_exponential(PhasePoint(s.z, s.zeta)), s.amp);
  throw std::invalid_argument("unknown symbol kind '" + s.kind + "'");
}

BerezinConfig berezin_config(const ExperimentConfig& cfg) {
  return {cfg.algebra, build_window(cfg), cfg.operator_grid, cfg.xi_grid, build_symbol(cfg)};
}

}  // namespace nilquant
