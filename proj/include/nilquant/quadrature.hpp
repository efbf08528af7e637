#pragma once

#include <vector>

namespace nilquant {

// Gauss-Legendre rule on [0, 1]; exact for polynomials of degree < 2m.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int m);

}  // namespace nilquant
