#pragma once

#include "nilquant/berezin.hpp"
#include "nilquant/random.hpp"
#include "nilquant/verify.hpp"

namespace nilquant {

namespace vu {

struct TestGaussian {
  Vec center;
  double width = 1.0;
  Vec wave;
  Field field;
};

// Adds a check timed from the previous lap; the residual is evaluated before the
// clock is read.
inline CheckResult& check(Report& rep, Stopwatch& sw, std::string name, double residual, double tol,
                          std::string note = {}) {
  return rep.add(std::move(name), residual, tol, sw.lap(), std::move(note));
}

std::vector<std::string> groups_or(const SuiteOptions& o, std::vector<std::string> defaults);
std::string tag(const std::string& group);
TestGaussian random_gaussian(Rng& r, int n, double center, double wmin, double wmax, double wave);
// <u, v> over R^n in closed form.
Complex gaussian_inner(const TestGaussian& u, const TestGaussian& v);
double max_diff(const Field& a, const Field& b, const std::vector<Vec>& pts);
std::size_t count_unequal(const Field& a, const Field& b, const std::vector<Vec>& pts);
std::vector<Vec> random_points(Rng& r, int n, std::size_t count, double range);

}  // namespace vu

// Residuals shared by the suites and the refinement study.
double orthogonality_residual(const Lie& L, const XiGrid& xi, Rng& rng);
double inversion_residual(const Lie& L, const XiGrid& xi, Rng& rng);
double reproducing_residual(const Lie& L, const XiGrid& xi, Rng& rng, int points);

struct BerezinResiduals {
  double identity = 0.0;  // max ||Ber(1) u - u|| / ||u|| over test vectors
  double trace = 0.0;     // |Tr Ber(f) - int f| / |int f|
};
BerezinResiduals berezin_residuals(const Lie& L, const Grid& g, const XiGrid& xi, Rng& rng);

}  // namespace nilquant
