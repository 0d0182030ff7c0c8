#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "potbound/constants.hpp"
#include "potbound/extended_real.hpp"

namespace potbound {

enum class GaugeKind { Power, PowerLog, Tabulated };

// An admissible gauge h: increasing, h(0) = 0, evaluated with constant
// extension h(r) beyond its domain radius (the extension Theorem-3-style
// content arguments rely on).
//
//   Power:    h(x) = b x^p                      (domain may be infinite)
//   PowerLog: h(x) = b x^p (ln(e r / x))^q      on (0, r], needs p - max(q,0) > 0
//   Tabulated: piecewise linear through (0,0) and the given samples;
//              with right_step=true it evaluates to the sample value at the
//              next node instead (a pointwise upper bound for nondecreasing
//              data, used when the table holds certified modulus uppers).
struct Gauge {
  GaugeKind kind = GaugeKind::Power;
  double b = 1.0;
  double p = 1.0;
  double q = 0.0;
  double domain_r = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> samples;
  bool right_step = false;

  double operator()(double x) const;
  double max_value() const;  // h(domain_r); +inf for unbounded power gauges
};

Gauge power_gauge(double b, double p,
                  double domain_r = std::numeric_limits<double>::infinity());
Gauge power_log_gauge(double b, double p, double q, double domain_r);
Gauge tabulated_gauge(std::vector<std::pair<double, double>> samples,
                      bool right_step = false);

struct SlopeResult {
  ExtendedReal s;          // s_h; +inf when inadmissible for this dimension
  bool grid_approx;        // true for tabulated gauges (right quotients on nodes)
  bool admissible() const { return s.finite(); }
};

// s_h = 1 / (inf_{t in (0,r)} t h'(t)/h(t) - (d-2)); +inf if the inf is <= d-2.
SlopeResult slope_s(const Gauge& h, Dimension d);

// Unique x in [0, r] with h(x) = M; bisection at relative tolerance 1e-12,
// closed form for power gauges. Throws std::out_of_range when M > h(r).
double gauge_inverse(const Gauge& h, double M);

// int_0^x h(t)/t^(d-1) dt; +inf when divergent. Closed form for power and
// piecewise-linear gauges, log-substituted quadrature for power-log.
ExtendedReal dini_integral(const Gauge& h, Dimension d, double x);

}  // namespace potbound
