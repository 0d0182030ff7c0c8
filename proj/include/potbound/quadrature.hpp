#pragma once

#include <functional>
#include <vector>

namespace potbound {

struct QuadResult {
  double value = 0.0;
  double err = 0.0;  // accumulated local error estimates
};

// Recursive adaptive Simpson with Richardson correction; tol is relative to
// the running scale of the integral.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, int max_depth = 48);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

}  // namespace potbound
