#pragma once

#include <stdexcept>

#include "potbound/extended_real.hpp"

namespace potbound {

// Ambient Euclidean dimension. Most of the library is exercised with
// d in {2,3}; quadrature-backed operations enforce that themselves.
struct Dimension {
  int value;
  explicit Dimension(int d) : value(d) {
    if (d < 2) throw std::domain_error("Dimension: d must be >= 2");
  }
};

// Radial kernel: K(t) = ln t for d = 2, K(t) = -t^(2-d) for d > 2.
// Strictly increasing in t; negative everywhere when d > 2.
// The exact normalization of the kernel primitive is inherited from the
// companion parts of the underlying theory; these forms are the ones the
// final inequalities are assembled from.
double kernel_K(Dimension d, double t);

// A_d(r,R) = 5 max{1, d-2} ((R+r)/(R-r))^(d-1) max{1, (R-r)^(d-2)}, 0 < r < R.
double constant_A(Dimension d, double r, double R);

// max{1, d-1}
int hat_d(Dimension d);

// c_p = pi^(p/2) / Gamma(p/2 + 1): unit-ball normalizer for power gauges.
double c_p(double p);

// Gamma(x) for x > 0 via a Lanczos approximation (~15 significant digits).
double gamma_positive(double x);

}  // namespace potbound
