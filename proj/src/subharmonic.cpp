#include "potbound/subharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "potbound/defaults.hpp"
#include "potbound/quadrature.hpp"

namespace potbound {

void validate_function(const DeltaSubharmonic& u) {
  if (u.dim < 2) throw std::invalid_argument("function: dimension must be >= 2");
  for (const auto& ch : u.positive)
    if (!(ch.mass > 0.0)) throw std::invalid_argument("function: charge masses must be > 0");
  for (const auto& ch : u.negative)
    if (!(ch.mass > 0.0)) throw std::invalid_argument("function: charge masses must be > 0");
}

ExtendedReal evaluate(const DeltaSubharmonic& u, Vec x) {
  const Dimension d(u.dim);
  double acc = u.constant;
  for (const auto& ch : u.positive) {
    const double r = dist(ch.at, x);
    if (r == 0.0) return ExtendedReal::neg_inf();
    acc += ch.mass * kernel_K(d, r);
  }
  for (const auto& ch : u.negative) {
    const double r = dist(ch.at, x);
    if (r == 0.0) return ExtendedReal::pos_inf();
    acc -= ch.mass * kernel_K(d, r);
  }
  return ExtendedReal(acc);
}

double evaluate_plus(const DeltaSubharmonic& u, Vec x) {
  const ExtendedReal v = evaluate(u, x);
  if (v.is_neg_inf()) return 0.0;
  return std::max(v.v, 0.0);
}

double charge_gap_to_sphere(const DeltaSubharmonic& u, double R) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& ch : u.positive) gap = std::min(gap, std::abs(norm(ch.at) - R));
  for (const auto& ch : u.negative) gap = std::min(gap, std::abs(norm(ch.at) - R));
  return gap;
}

namespace {

SphereMeanResult sphere_mean_impl(const DeltaSubharmonic& u, double R, bool plus_part) {
  if (!(R > 0.0)) throw std::domain_error("sphere_mean: R must be > 0");
  if (u.dim != 2 && u.dim != 3)
    throw std::domain_error("sphere_mean: quadrature backed only for d in {2,3}");
  const double gap = charge_gap_to_sphere(u, R);
  if (gap < defaults::kSphereExclusionFraction * R)
    throw std::domain_error("sphere_mean: charge within " + std::to_string(gap) +
                            " of the integration sphere |x| = " + std::to_string(R));

  auto f = [&](Vec p) { return plus_part ? evaluate_plus(u, p) : evaluate(u, p).v; };

  SphereMeanResult out;
  double prev = 0.0;
  bool have_prev = false;
  if (u.dim == 2) {
    for (long n = 64; n <= (1L << 18); n *= 2) {
      double s = 0.0;
      for (long i = 0; i < n; ++i) {
        const double th = 2.0 * M_PI * (double)i / (double)n;
        s += f({R * std::cos(th), R * std::sin(th), 0.0});
      }
      s /= (double)n;
      out.nodes = n;
      out.value = s;
      if (have_prev && std::abs(s - prev) <= defaults::kSphereMeanRelTol * std::max(std::abs(s), 1e-9))
        break;
      prev = s;
      have_prev = true;
    }
  } else {
    for (int m = 16; m <= 1024; m *= 2) {
      const GaussRule& g = gauss_legendre(m);
      const long nphi = 2 * m;
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        const double mu = g.nodes[i];
        const double sth = std::sqrt(std::max(1.0 - mu * mu, 0.0));
        double ring = 0.0;
        for (long j = 0; j < nphi; ++j) {
          const double ph = 2.0 * M_PI * (double)j / (double)nphi;
          ring += f({R * sth * std::cos(ph), R * sth * std::sin(ph), R * mu});
        }
        s += g.weights[i] * ring / (double)nphi;
      }
      s *= 0.5;  // weights sum to 2
      out.nodes = (long)m * nphi;
      out.value = s;
      if (have_prev && std::abs(s - prev) <= defaults::kSphereMeanRelTol * std::max(std::abs(s), 1e-9))
        break;
      prev = s;
      have_prev = true;
    }
  }
  return out;
}

// hat_d * int_a^x t^(1-d) dt for 0 < a <= x
double radial_piece_d(double a, double x, int dim) {
  if (dim == 2) return std::log(x / a);
  const double dd = (double)dim;
  return (double)std::max(1, dim - 1) * (std::pow(a, 2.0 - dd) - std::pow(x, 2.0 - dd)) / (dd - 2.0);
}

}  // namespace

SphereMeanResult sphere_mean_plus(const DeltaSubharmonic& u, double R) {
  return sphere_mean_impl(u, R, true);
}

SphereMeanResult sphere_mean(const DeltaSubharmonic& u, double R) {
  return sphere_mean_impl(u, R, false);
}

CharacteristicValue nevanlinna_T(const DeltaSubharmonic& u, double r, double R) {
  if (!(r >= 0.0 && R > r)) throw std::domain_error("nevanlinna_T: need 0 <= r < R");
  const SphereMeanResult m = sphere_mean_plus(u, R);
  double N = 0.0;
  for (const auto& ch : u.negative) {
    const double rho = norm(ch.at);
    if (rho > R) continue;
    const double a = std::max(rho, r);
    if (a == 0.0) {
      N = std::numeric_limits<double>::infinity();  // pole at the origin, r = 0
      break;
    }
    if (a < R) N += ch.mass * radial_piece_d(a, R, u.dim);
  }
  CharacteristicValue out;
  out.r = r;
  out.R = R;
  out.value = m.value + N;
  out.nodes = m.nodes;
  return out;
}

// ---------------------------------------------------------------------------
// Integration of U+ against measures
// ---------------------------------------------------------------------------

namespace {

IntegralResult integrate_atomic(const DeltaSubharmonic& u, const AtomicMeasure& am) {
  IntegralResult out;
  for (const auto& [p, mass] : am.atoms) {
    const ExtendedReal v = evaluate(u, p);
    if (v.is_pos_inf()) {
      out.infinite = true;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    if (v.is_neg_inf()) continue;  // U+ = 0
    out.value += mass * std::max(v.v, 0.0);
  }
  return out;
}

IntegralResult integrate_polyline(const DeltaSubharmonic& u, const PolylineMeasure& pm) {
  IntegralResult out;
  auto do_segment = [&](Vec a, Vec b) {
    const double len = dist(a, b);
    if (len == 0.0) return;
    // split at charge projections so the adaptive rule sees the kinks
    std::vector<double> cuts = {0.0, 1.0};
    auto add_proj = [&](const Charge& ch, bool negative) {
      const Vec d = b - a;
      const double tt = dot(ch.at - a, d) / dot(d, d);
      const Vec q = a + std::clamp(tt, 0.0, 1.0) * d;
      const double gap = dist(q, ch.at);
      if (negative && gap < 1e-14 * std::max(1.0, len)) {
        out.infinite = true;
        return;
      }
      if (tt > 0.0 && tt < 1.0 && gap < len) cuts.push_back(tt);
    };
    for (const auto& ch : u.positive) add_proj(ch, false);
    for (const auto& ch : u.negative) add_proj(ch, true);
    if (out.infinite) return;
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] <= cuts[i]) continue;
      auto f = [&](double t) { return evaluate_plus(u, a + t * (b - a)); };
      const QuadResult q = adaptive_simpson(f, cuts[i], cuts[i + 1], defaults::kIntegrateRelTol * 1e-2);
      out.value += pm.rate * len * q.value;
      out.err += pm.rate * len * q.err;
    }
  };
  for (const auto& chain : pm.chains) {
    for (size_t i = 0; i + 1 < chain.size(); ++i) do_segment(chain[i], chain[i + 1]);
    if (pm.closed && chain.size() > 2) do_segment(chain.back(), chain.front());
    if (out.infinite) {
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  return out;
}

IntegralResult integrate_grid(const DeltaSubharmonic& u, const Measure& m, const GridMeasure& gm) {
  IntegralResult out;
  const double vol = std::pow(gm.cell_side, m.dim);
  auto pass = [&](int n) {
    double acc = 0.0;
    const bool threed = m.dim == 3;
    for (size_t ci = 0; ci < gm.cells.size(); ++ci) {
      const auto& c = gm.cells[ci];
      const Vec lo{gm.origin.x + c[0] * gm.cell_side, gm.origin.y + c[1] * gm.cell_side,
                   threed ? gm.origin.z + c[2] * gm.cell_side : 0.0};
      double cell_acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < (threed ? n : 1); ++l) {
            const Vec p{lo.x + (i + 0.5) * gm.cell_side / n, lo.y + (j + 0.5) * gm.cell_side / n,
                        threed ? lo.z + (l + 0.5) * gm.cell_side / n : 0.0};
            cell_acc += evaluate_plus(u, p);
          }
      acc += gm.density_at(ci) * vol * cell_acc / std::pow((double)n, m.dim);
    }
    return acc;
  };
  double prev = pass(1);
  double rich_prev = prev;
  for (int n = 2; n <= 16; n *= 2) {
    const double cur = pass(n);
    const double rich = cur + (cur - prev) / 3.0;  // midpoint rule is order 2
    out.value = rich;
    out.err = std::abs(rich - rich_prev);
    if (out.err <= defaults::kIntegrateRelTol * std::max(std::abs(rich), 1e-12)) break;
    rich_prev = rich;
    prev = cur;
  }
  return out;
}

void integrate_triangle_rec(const DeltaSubharmonic& u, const std::array<Vec, 3>& tri,
                            double whole, int depth, double rel_tol, IntegralResult& out) {
  const Vec m01 = 0.5 * (tri[0] + tri[1]);
  const Vec m12 = 0.5 * (tri[1] + tri[2]);
  const Vec m02 = 0.5 * (tri[0] + tri[2]);
  const std::array<std::array<Vec, 3>, 4> kids = {{{tri[0], m01, m02},
                                                   {m01, tri[1], m12},
                                                   {m02, m12, tri[2]},
                                                   {m01, m12, m02}}};
  auto centroid_rule = [&](const std::array<Vec, 3>& t) {
    const Vec g = (1.0 / 3.0) * (t[0] + t[1] + t[2]);
    double s = 3.0 * evaluate_plus(u, g);
    for (const Vec& v : t) s += evaluate_plus(u, v);
    for (const Vec& v : {0.5 * (t[0] + t[1]), 0.5 * (t[1] + t[2]), 0.5 * (t[0] + t[2])})
      s += 2.0 * evaluate_plus(u, v);
    return triangle_area(t) * s / 12.0;
  };
  double parts = 0.0;
  std::array<double, 4> kid_vals{};
  for (int i = 0; i < 4; ++i) {
    kid_vals[i] = centroid_rule(kids[i]);
    parts += kid_vals[i];
  }
  if (depth >= 12 || std::abs(parts - whole) <= rel_tol * std::max(std::abs(parts), 1e-14)) {
    out.value += parts;
    out.err += std::abs(parts - whole);
    return;
  }
  for (int i = 0; i < 4; ++i)
    integrate_triangle_rec(u, kids[i], kid_vals[i], depth + 1, rel_tol, out);
}

IntegralResult integrate_surface(const DeltaSubharmonic& u, const SurfaceMeasure& sm) {
  IntegralResult out;
  for (const auto& ch : sm.charts) {
    const Vec g = (1.0 / 3.0) * (ch.xyz[0] + ch.xyz[1] + ch.xyz[2]);
    const double whole = triangle_area(ch.xyz) * evaluate_plus(u, g);
    integrate_triangle_rec(u, ch.xyz, whole, 0, defaults::kIntegrateRelTol, out);
  }
  return out;
}

IntegralResult integrate_cantor(const DeltaSubharmonic& u, const CantorMeasure& cm) {
  IntegralResult out;
  if (cm.base == CantorMeasure::Base::Square)
    throw std::invalid_argument("integrate_plus_against: cantor dust not supported");
  const auto& lefts = cantor_level_lefts(cm.level);
  const double s3 = std::pow(3.0, cm.level);
  const double piece_len = cm.extent / s3;
  const double piece_mass = cm.total / std::pow(2.0, cm.level);
  for (int64_t L : lefts) {
    const Vec mid{cm.corner.x + ((double)L + 0.5) * piece_len, cm.corner.y, 0.0};
    out.value += piece_mass * evaluate_plus(u, mid);
    // modulus-based bound: |U+| varies at most lip * half piece on the piece
    double lip = 0.0;
    for (const auto& ch : u.positive) {
      const double gap = std::max(dist(ch.at, mid) - 0.5 * piece_len, 1e-12);
      lip += ch.mass * (u.dim == 2 ? 1.0 / gap : (u.dim - 2) / std::pow(gap, u.dim - 1));
    }
    for (const auto& ch : u.negative) {
      const double gap = std::max(dist(ch.at, mid) - 0.5 * piece_len, 1e-12);
      lip += ch.mass * (u.dim == 2 ? 1.0 / gap : (u.dim - 2) / std::pow(gap, u.dim - 1));
    }
    out.err += piece_mass * lip * 0.5 * piece_len;
  }
  return out;
}

}  // namespace

IntegralResult integrate_plus_against(const DeltaSubharmonic& u, const Measure& mu) {
  if ((int)u.dim != mu.dim)
    throw std::invalid_argument("integrate_plus_against: dimension mismatch");
  return std::visit(
      [&](const auto& rep) -> IntegralResult {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          return integrate_atomic(u, rep);
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          return integrate_grid(u, mu, rep);
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          return integrate_polyline(u, rep);
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          return integrate_surface(u, rep);
        } else {
          return integrate_cantor(u, rep);
        }
      },
      mu.rep);
}

// ---------------------------------------------------------------------------
// d >= 4 fallback
// ---------------------------------------------------------------------------

namespace {
double nd_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}
}  // namespace

double evaluate_nd(const DeltaSubharmonicNd& u, const std::vector<double>& x) {
  const Dimension d(u.dim);
  double acc = u.constant;
  for (const auto& ch : u.positive) acc += ch.mass * kernel_K(d, nd_dist(ch.at, x));
  for (const auto& ch : u.negative) acc -= ch.mass * kernel_K(d, nd_dist(ch.at, x));
  return acc;
}

namespace {
McMeanResult mc_mean_impl(const DeltaSubharmonicNd& u, double R, long samples,
                          unsigned long long seed, bool plus_part) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double acc = 0.0;
  std::vector<double> x(u.dim);
  for (long s = 0; s < samples; ++s) {
    double nrm = 0.0;
    for (int i = 0; i < u.dim; ++i) {
      x[i] = gauss(rng);
      nrm += x[i] * x[i];
    }
    nrm = std::sqrt(nrm);
    for (int i = 0; i < u.dim; ++i) x[i] *= R / nrm;
    const double v = evaluate_nd(u, x);
    acc += plus_part ? std::max(v, 0.0) : v;
  }
  McMeanResult out;
  out.value = acc / (double)samples;
  out.samples = samples;
  return out;
}
}  // namespace

McMeanResult mc_sphere_mean_plus(const DeltaSubharmonicNd& u, double R, long samples,
                                 unsigned long long seed) {
  return mc_mean_impl(u, R, samples, seed, true);
}

McMeanResult mc_sphere_mean(const DeltaSubharmonicNd& u, double R, long samples,
                            unsigned long long seed) {
  return mc_mean_impl(u, R, samples, seed, false);
}

double nevanlinna_N_nd(const DeltaSubharmonicNd& u, double r, double R) {
  if (!(r >= 0.0 && R > r)) throw std::domain_error("nevanlinna_N_nd: need 0 <= r < R");
  double N = 0.0;
  std::vector<double> origin(u.dim, 0.0);
  for (const auto& ch : u.negative) {
    const double rho = nd_dist(ch.at, origin);
    if (rho > R) continue;
    const double a = std::max(rho, r);
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    if (a < R) N += ch.mass * radial_piece_d(a, R, u.dim);
  }
  return N;
}

}  // namespace potbound
