#include "potbound/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace potbound {

namespace {

struct SimpsonCtx {
  const std::function<double(double)>& f;
  double abs_tol;
  double err = 0.0;
};

double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = ctx.f(lm), frm = ctx.f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // the 1e-15 floor stops the halved tolerance from chasing rounding noise
  const double noise = 1e-15 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= std::max(15.0 * tol, noise)) {
    ctx.err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, int max_depth) {
  if (a == b) return {0.0, 0.0};
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  // scale for the relative tolerance: a crude 9-point estimate
  double scale = std::abs(whole);
  for (int i = 1; i < 9; i += 2) scale = std::max(scale, std::abs(f(a + (b - a) * i / 9.0) * (b - a)));
  SimpsonCtx ctx{f, 0.0, 0.0};
  const double tol = rel_tol * std::max(scale, 1e-300);
  const double v = simpson_rec(ctx, a, b, fa, fm, fb, whole, tol, max_depth);
  return {v, ctx.err};
}

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  auto [pos, _] = cache.emplace(n, std::move(rule));
  return pos->second;
}

}  // namespace potbound
