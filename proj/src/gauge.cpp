#include "potbound/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "potbound/defaults.hpp"
#include "potbound/quadrature.hpp"

namespace potbound {

namespace {

double power_log_value(const Gauge& g, double x) {
  // h(x) = b x^p (ln(e r / x))^q, constant beyond r
  if (x <= 0.0) return 0.0;
  const double xr = std::min(x, g.domain_r);
  const double L = std::log(M_E * g.domain_r / xr);
  return g.b * std::pow(xr, g.p) * std::pow(L, g.q);
}

double tabulated_value(const Gauge& g, double x) {
  if (x <= 0.0) return 0.0;
  const auto& s = g.samples;
  if (x >= s.back().first) return s.back().second;
  if (g.right_step) {
    auto it = std::lower_bound(s.begin(), s.end(), x,
                               [](const auto& a, double v) { return a.first < v; });
    return it->second;
  }
  double x0 = 0.0, h0 = 0.0;
  for (const auto& [xi, hi] : s) {
    if (x <= xi) return h0 + (hi - h0) * (x - x0) / (xi - x0);
    x0 = xi;
    h0 = hi;
  }
  return s.back().second;
}

}  // namespace

double Gauge::operator()(double x) const {
  if (x < 0.0) throw std::domain_error("Gauge: negative argument");
  switch (kind) {
    case GaugeKind::Power:
      return b * std::pow(std::min(x, domain_r), p);
    case GaugeKind::PowerLog:
      return power_log_value(*this, x);
    case GaugeKind::Tabulated:
      return tabulated_value(*this, x);
  }
  return 0.0;
}

double Gauge::max_value() const {
  if (kind == GaugeKind::Power && !std::isfinite(domain_r))
    return std::numeric_limits<double>::infinity();
  return (*this)(domain_r);
}

Gauge power_gauge(double b, double p, double domain_r) {
  if (!(b > 0.0) || !(p > 0.0)) throw std::domain_error("power gauge: b, p must be > 0");
  if (!(domain_r > 0.0)) throw std::domain_error("power gauge: domain radius must be > 0");
  Gauge g;
  g.kind = GaugeKind::Power;
  g.b = b;
  g.p = p;
  g.domain_r = domain_r;
  return g;
}

Gauge power_log_gauge(double b, double p, double q, double domain_r) {
  if (!(b > 0.0) || !(p > 0.0)) throw std::domain_error("power-log gauge: b, p must be > 0");
  if (!(domain_r > 0.0) || !std::isfinite(domain_r))
    throw std::domain_error("power-log gauge: finite domain radius required");
  if (!(p - std::max(q, 0.0) > 0.0))
    throw std::domain_error("power-log gauge: p - max(q,0) must be > 0 (monotonicity)");
  Gauge g;
  g.kind = GaugeKind::PowerLog;
  g.b = b;
  g.p = p;
  g.q = q;
  g.domain_r = domain_r;
  return g;
}

Gauge tabulated_gauge(std::vector<std::pair<double, double>> samples, bool right_step) {
  if (samples.empty()) throw std::domain_error("tabulated gauge: empty table");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || samples[i].second < 0.0)
      throw std::domain_error("tabulated gauge: need x > 0 and h >= 0");
    if (i > 0 && (samples[i].first <= samples[i - 1].first ||
                  samples[i].second < samples[i - 1].second))
      throw std::domain_error("tabulated gauge: table must be strictly increasing in x, nondecreasing in h");
  }
  Gauge g;
  g.kind = GaugeKind::Tabulated;
  g.samples = std::move(samples);
  g.domain_r = g.samples.back().first;
  g.right_step = right_step;
  return g;
}

SlopeResult slope_s(const Gauge& h, Dimension d) {
  double inf_slope;
  bool grid = false;
  switch (h.kind) {
    case GaugeKind::Power:
      inf_slope = h.p;
      break;
    case GaugeKind::PowerLog:
      // t h'/h = p - q/ln(e r/t): inf is p - q at t = r for q > 0, else p.
      inf_slope = h.p - std::max(h.q, 0.0);
      break;
    case GaugeKind::Tabulated: {
      grid = true;
      inf_slope = std::numeric_limits<double>::infinity();
      double x0 = 0.0, h0 = 0.0;
      for (const auto& [xi, hi] : h.samples) {
        if (h0 > 0.0) {
          const double quot = (hi - h0) / (xi - x0);
          inf_slope = std::min(inf_slope, x0 * quot / h0);
        }
        x0 = xi;
        h0 = hi;
      }
      break;
    }
    default:
      inf_slope = 0.0;
  }
  const double denom = inf_slope - (double)(d.value - 2);
  SlopeResult r;
  r.grid_approx = grid;
  r.s = denom > 0.0 ? ExtendedReal(1.0 / denom) : ExtendedReal::pos_inf();
  return r;
}

double gauge_inverse(const Gauge& h, double M) {
  if (M < 0.0) throw std::domain_error("gauge_inverse: M must be >= 0");
  if (M == 0.0) return 0.0;
  if (h.kind == GaugeKind::Power) {
    const double x = std::pow(M / h.b, 1.0 / h.p);
    if (std::isfinite(h.domain_r) && x > h.domain_r * (1.0 + 1e-9))
      throw std::out_of_range("gauge_inverse: M exceeds h(r)");
    return std::min(x, h.domain_r);
  }
  const double r = h.domain_r;
  const double hr = h(r);
  if (M > hr * (1.0 + 1e-9)) throw std::out_of_range("gauge_inverse: M exceeds h(r)");
  if (M >= hr) return r;
  double lo = 0.0, hi = r;
  for (int it = 0; it < defaults::kGaugeInverseMaxIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (std::abs(hm - M) <= defaults::kGaugeInverseRelTol * M &&
        (hi - lo) <= defaults::kGaugeInverseRelTol * std::max(mid, 1e-300))
      return mid;
    (hm < M ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ExtendedReal dini_integral(const Gauge& h, Dimension d, double x) {
  if (!(x > 0.0)) throw std::domain_error("dini_integral: x must be > 0");
  const double dd = (double)d.value;
  switch (h.kind) {
    case GaugeKind::Power: {
      const double e = h.p - dd + 2.0;
      if (e <= 0.0) return ExtendedReal::pos_inf();
      const double xr = std::min(x, h.domain_r);
      double v = h.b * std::pow(xr, e) / e;
      if (x > h.domain_r) {
        // constant extension h(r) past the domain radius
        const double hr = h(h.domain_r);
        v += hr * (d.value == 2 ? std::log(x / h.domain_r)
                                : (std::pow(h.domain_r, 2.0 - dd) - std::pow(x, 2.0 - dd)) / (dd - 2.0));
      }
      return ExtendedReal(v);
    }
    case GaugeKind::PowerLog: {
      const double alpha = h.p - dd + 2.0;
      if (alpha <= 0.0) {
        if (alpha == 0.0 && h.q < -1.0) {
          const double L = std::log(M_E * h.domain_r / std::min(x, h.domain_r));
          return ExtendedReal(h.b * std::pow(L, h.q + 1.0) / (-(h.q + 1.0)));
        }
        return ExtendedReal::pos_inf();
      }
      const double xr = std::min(x, h.domain_r);
      const double u1 = std::log(xr);
      const double u0 = u1 - (50.0 + 5.0 * std::abs(h.q)) / alpha;
      auto integrand = [&](double u) {
        const double t = std::exp(u);
        return h(t) * std::exp(u * (2.0 - dd));
      };
      double v = adaptive_simpson(integrand, u0, u1, 1e-12).value;
      if (x > h.domain_r) {
        const double hr = h(h.domain_r);
        v += hr * (d.value == 2 ? std::log(x / h.domain_r)
                                : (std::pow(h.domain_r, 2.0 - dd) - std::pow(x, 2.0 - dd)) / (dd - 2.0));
      }
      return ExtendedReal(v);
    }
    case GaugeKind::Tabulated: {
      if (d.value >= 3) return ExtendedReal::pos_inf();  // linear near 0: divergent
      // d = 2: h piecewise linear a + c t, so h(t)/t integrates to a ln t + c t.
      double acc = 0.0;
      double x0 = 0.0, h0 = 0.0;
      const double cap = std::min(x, h.domain_r);
      for (const auto& [xi, hi] : h.samples) {
        const double lo = x0, hi_x = std::min(xi, cap);
        if (hi_x > lo) {
          const double c = (hi - h0) / (xi - x0);
          const double a = h0 - c * x0;
          acc += c * (hi_x - lo);
          if (a != 0.0) acc += a * std::log(hi_x / std::max(lo, 1e-300));
        }
        if (xi >= cap) break;
        x0 = xi;
        h0 = hi;
      }
      if (x > h.domain_r) acc += h(h.domain_r) * std::log(x / h.domain_r);
      return ExtendedReal(acc);
    }
  }
  return ExtendedReal::pos_inf();
}

}  // namespace potbound
