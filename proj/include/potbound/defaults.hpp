#pragma once

// Library-wide numeric defaults. Everything that an acceptance check pins
// lives here so the values are set once, in code, not at calibration time.

namespace potbound::defaults {

// Relative + absolute slack when deciding lhs <= rhs in a verification record.
inline constexpr double kPassRelTol = 1e-3;
inline constexpr double kPassAbsTol = 1e-9;

// Gauge inversion by bisection.
inline constexpr double kGaugeInverseRelTol = 1e-12;
inline constexpr int kGaugeInverseMaxIter = 200;

// Modulus-of-continuity certification: refine candidate centers until
// (upper - lower)/upper drops below this (when the representation allows it).
inline constexpr double kModulusGapRelTol = 1e-2;

// Charges may not sit closer than this fraction of R to an integration sphere.
inline constexpr double kSphereExclusionFraction = 1e-3;

// Sphere means double the node count until successive values agree to this.
inline constexpr double kSphereMeanRelTol = 1e-9;

// Target relative error for integrals of U+ against measures.
inline constexpr double kIntegrateRelTol = 1e-6;

// Dyadic rasterization resolution (cells per side = 2^k).
inline constexpr int kDyadicResolution = 10;

// Greedy set cover runs on at most this many cell units; finer rasters
// are grouped into supercells first.
inline constexpr int kGreedyCellBudget = 4096;

// Factor breakdown must reproduce the recorded rhs to this relative error.
inline constexpr double kBreakdownRelTol = 1e-12;

// Monte Carlo sphere-mean fallback for d >= 4 (excluded from acceptance).
inline constexpr long kMonteCarloSamples = 1000000;
inline constexpr unsigned long long kDefaultSeed = 0x5eed5eedULL;

}  // namespace potbound::defaults
