#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace potbound {

// Extended real line with the multiplication convention 0*(+-inf) = 0,
// which every mass * log-factor product in this library relies on
// (null measures must yield a zero right-hand side, not NaN).
struct ExtendedReal {
  double v = 0.0;

  ExtendedReal() = default;
  ExtendedReal(double x) : v(x) {}  // NOLINT: implicit by design

  static ExtendedReal pos_inf() { return ExtendedReal(std::numeric_limits<double>::infinity()); }
  static ExtendedReal neg_inf() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }

  bool finite() const { return std::isfinite(v); }
  bool is_pos_inf() const { return std::isinf(v) && v > 0; }
  bool is_neg_inf() const { return std::isinf(v) && v < 0; }

  double value() const {
    if (!finite()) throw std::domain_error("ExtendedReal: value() on infinite");
    return v;
  }
};

inline ExtendedReal xr_mul(ExtendedReal a, ExtendedReal b) {
  if ((a.v == 0.0 && std::isinf(b.v)) || (b.v == 0.0 && std::isinf(a.v))) return ExtendedReal(0.0);
  return ExtendedReal(a.v * b.v);
}

inline ExtendedReal xr_add(ExtendedReal a, ExtendedReal b) {
  if (a.is_pos_inf() && b.is_neg_inf()) throw std::domain_error("ExtendedReal: inf - inf");
  if (a.is_neg_inf() && b.is_pos_inf()) throw std::domain_error("ExtendedReal: inf - inf");
  return ExtendedReal(a.v + b.v);
}

inline bool operator<(ExtendedReal a, ExtendedReal b) { return a.v < b.v; }
inline bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v <= b.v; }
inline bool operator==(ExtendedReal a, ExtendedReal b) { return a.v == b.v; }

}  // namespace potbound
