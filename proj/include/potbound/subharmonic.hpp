#pragma once

#include <string>
#include <vector>

#include "potbound/constants.hpp"
#include "potbound/extended_real.hpp"
#include "potbound/measure.hpp"

namespace potbound {

// U(x) = c + sum q_i K(|x - a_i|) - sum s_j K(|x - b_j|) with the radial
// kernel K of the ambient dimension. For d = 2 and integer masses this is
// log|f| of a rational function: positive charges are zeros, negative poles.
struct Charge {
  Vec at;
  double mass = 1.0;  // > 0
};

struct DeltaSubharmonic {
  int dim = 2;
  std::vector<Charge> positive;
  std::vector<Charge> negative;
  double constant = 0.0;
  std::string label;
};

void validate_function(const DeltaSubharmonic& u);

// -inf at positive charges, +inf at negative charges.
ExtendedReal evaluate(const DeltaSubharmonic& u, Vec x);

// max(U, 0) as a double; +inf only at negative charges.
double evaluate_plus(const DeltaSubharmonic& u, Vec x);

// Smallest | |a| - R | over all charges (distance to the integration sphere).
double charge_gap_to_sphere(const DeltaSubharmonic& u, double R);

struct SphereMeanResult {
  double value = 0.0;
  long nodes = 0;
};

// Mean of U+ over the sphere |x| = R. Periodic trapezoid (d=2) or
// Gauss-Legendre x trapezoid (d=3), node count doubled until stable.
// Refuses (std::domain_error, reporting the distance) when a charge sits
// within the exclusion fraction of the sphere.
SphereMeanResult sphere_mean_plus(const DeltaSubharmonic& u, double R);

// Full (signed) sphere mean, used for mean-value calibration.
SphereMeanResult sphere_mean(const DeltaSubharmonic& u, double R);

struct CharacteristicValue {
  double r = 0.0, R = 1.0;
  double value = 0.0;
  long nodes = 0;
};

// T_U(r,R) = sphere_mean_plus(U, R) + hat_d int_r^R nu^-(B(t)) / t^(d-1) dt.
// For d = 2 and U = log|f| this is the classical m(R) + N(r,R).
CharacteristicValue nevanlinna_T(const DeltaSubharmonic& u, double r, double R);

struct IntegralResult {
  double value = 0.0;
  double err = 0.0;
  bool infinite = false;  // an atom of mu coincides with a negative charge
};

// int U+ dmu. Exact sums for atomic and Cantor measures (with a
// modulus-based error bound for the latter), adaptive quadrature along
// polylines and surfaces, midpoint + Richardson over grid cells.
IntegralResult integrate_plus_against(const DeltaSubharmonic& u, const Measure& mu);

// ---------------------------------------------------------------------------
// d >= 4: closed-form evaluation and N-term; the sphere mean falls back to
// seeded Monte Carlo and is flagged stochastic (kept out of acceptance runs).
// ---------------------------------------------------------------------------

struct NdCharge {
  std::vector<double> at;
  double mass = 1.0;
};

struct DeltaSubharmonicNd {
  int dim = 4;
  std::vector<NdCharge> positive;
  std::vector<NdCharge> negative;
  double constant = 0.0;
};

double evaluate_nd(const DeltaSubharmonicNd& u, const std::vector<double>& x);

struct McMeanResult {
  double value = 0.0;
  long samples = 0;
  bool stochastic = true;
};
McMeanResult mc_sphere_mean_plus(const DeltaSubharmonicNd& u, double R,
                                 long samples, unsigned long long seed);
McMeanResult mc_sphere_mean(const DeltaSubharmonicNd& u, double R, long samples,
                            unsigned long long seed);

double nevanlinna_N_nd(const DeltaSubharmonicNd& u, double r, double R);

}  // namespace potbound
