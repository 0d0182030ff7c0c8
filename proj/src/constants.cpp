#include "potbound/constants.hpp"

#include <cmath>

namespace potbound {

double kernel_K(Dimension d, double t) {
  if (!(t > 0.0)) throw std::domain_error("kernel_K: t must be > 0");
  if (d.value == 2) return std::log(t);
  return -std::pow(t, -(double)(d.value - 2));
}

double constant_A(Dimension d, double r, double R) {
  if (!(0.0 < r && r < R)) throw std::domain_error("constant_A: need 0 < r < R");
  const double dd = (double)d.value;
  const double ring = (R + r) / (R - r);
  return 5.0 * std::max(1.0, dd - 2.0) * std::pow(ring, dd - 1.0) *
         std::max(1.0, std::pow(R - r, dd - 2.0));
}

int hat_d(Dimension d) { return std::max(1, d.value - 1); }

double gamma_positive(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_positive: x must be > 0");
  // Lanczos, g = 7, 9 coefficients (Godfrey's set).
  static const double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection keeps the approximation in its sweet spot
    return M_PI / (std::sin(M_PI * x) * gamma_positive(1.0 - x));
  }
  const double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + (double)i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double c_p(double p) {
  if (!(p > 0.0)) throw std::domain_error("c_p: p must be > 0");
  return std::pow(M_PI, p / 2.0) / gamma_positive(p / 2.0 + 1.0);
}

}  // namespace potbound
