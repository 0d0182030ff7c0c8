#include <doctest.h>

#include <cmath>

#include "potbound/constants.hpp"

using namespace potbound;

TEST_CASE("kernel values") {
  CHECK(kernel_K(Dimension(2), std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kernel_K(Dimension(3), 2.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(kernel_K(Dimension(4), 2.0) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_K(Dimension(2), 0.0), std::domain_error);
  CHECK_THROWS_AS(kernel_K(Dimension(2), -1.0), std::domain_error);
}

TEST_CASE("kernel is strictly increasing and negative for d > 2") {
  for (int d = 2; d <= 5; ++d) {
    double prev = kernel_K(Dimension(d), 1e-3);
    for (double t = 2e-3; t < 50.0; t *= 1.37) {
      const double v = kernel_K(Dimension(d), t);
      CHECK(v > prev);
      if (d > 2) CHECK(v < 0.0);
      prev = v;
    }
  }
}

TEST_CASE("A_d values") {
  CHECK(constant_A(Dimension(2), 1.0, 3.0) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(constant_A(Dimension(3), 1.0, 2.0) == doctest::Approx(45.0).epsilon(1e-14));
  CHECK(constant_A(Dimension(2), 1.0, 2.0) == doctest::Approx(15.0).epsilon(1e-14));
  CHECK_THROWS_AS(constant_A(Dimension(2), 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(constant_A(Dimension(2), 2.0, 1.0), std::domain_error);
}

TEST_CASE("A_d blow-up rate as R drops to r") {
  // d = 2: A * (R - r) -> 5 (R + r); dyadic eps keeps R - r exact
  for (double eps : {0x1p-10, 0x1p-20, 0x1p-30}) {
    const double A = constant_A(Dimension(2), 1.0, 1.0 + eps);
    CHECK(A * eps == doctest::Approx(5.0 * (2.0 + eps)).epsilon(1e-12));
  }
  // d = 3 stays within the simplified whole-space bound
  for (double r : {0.5, 1.0, 4.0})
    for (double s : {0.1, 0.5, 2.0}) {
      const double A = constant_A(Dimension(3), r, r + s);
      const double bound = 5.0 * 2.0 * std::pow(1.0 + 2.0 * r / s, 2.0) * std::max(1.0, s);
      CHECK(A <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("hat_d") {
  CHECK(hat_d(Dimension(2)) == 1);
  CHECK(hat_d(Dimension(3)) == 2);
  CHECK(hat_d(Dimension(5)) == 4);
  CHECK_THROWS_AS(Dimension(1), std::domain_error);
}

TEST_CASE("c_p normalizers") {
  CHECK(c_p(1.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(c_p(2.0) == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(c_p(3.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));
  // unit-ball volume bound used by the Lebesgue corollary
  for (int d = 3; d <= 12; ++d) CHECK(c_p((double)d) < 6.0);
  CHECK(c_p(5.0) == doctest::Approx(8.0 / 15.0 * M_PI * M_PI).epsilon(1e-10));
}

TEST_CASE("gamma against exact factorials and half-integers") {
  CHECK(gamma_positive(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma_positive(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(gamma_positive(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(gamma_positive(2.5) == doctest::Approx(1.5 * 0.5 * std::sqrt(M_PI)).epsilon(1e-12));
}
