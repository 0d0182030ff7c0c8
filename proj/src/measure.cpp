#include "potbound/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>

#include "potbound/quadrature.hpp"

namespace potbound {

namespace {

constexpr double kEps = 1e-12;

double chain_length(const std::vector<Vec>& c, bool closed) {
  double L = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) L += dist(c[i], c[i + 1]);
  if (closed && c.size() > 2) L += dist(c.back(), c.front());
  return L;
}

}  // namespace

// Left endpoints (in units of 3^-n) of the 2^n level-n intervals, sorted.
const std::vector<int64_t>& cantor_level_lefts(int level) {
  static std::map<int, std::shared_ptr<std::vector<int64_t>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(level);
  if (it == cache.end()) {
    auto v = std::make_shared<std::vector<int64_t>>();
    v->push_back(0);
    for (int i = 0; i < level; ++i) {
      std::vector<int64_t> next;
      next.reserve(v->size() * 2);
      for (int64_t x : *v) {
        next.push_back(3 * x);
        next.push_back(3 * x + 2);
      }
      *v = std::move(next);
    }
    it = cache.emplace(level, std::move(v)).first;
  }
  return *it->second;
}

namespace {

const std::vector<int64_t>& cantor_lefts(int level) { return cantor_level_lefts(level); }

// Mass of the Cantor interval measure on the window [a, b] given in units
// of 3^-level relative to the base interval.
double cantor_window_mass_units(int level, double a, double b) {
  const auto& lefts = cantor_lefts(level);
  const double scale3 = std::pow(3.0, level);
  a = std::max(a, 0.0);
  b = std::min(b, scale3);
  if (b <= a) return 0.0;
  // first interval with left+1 > a, last with left < b
  auto lo = std::upper_bound(lefts.begin(), lefts.end(), (int64_t)std::floor(a - 1.0));
  while (lo != lefts.end() && (double)(*lo + 1) <= a) ++lo;
  auto hi = std::lower_bound(lefts.begin(), lefts.end(), (int64_t)std::ceil(b));
  while (hi != lefts.begin() && (double)*(hi - 1) >= b) --hi;
  if (lo >= hi) return 0.0;
  double units = 0.0;
  for (auto it2 = lo; it2 != hi; ++it2) {
    const double L = (double)*it2;
    const double ov = std::min(b, L + 1.0) - std::max(a, L);
    if (it2 == lo || it2 == hi - 1) {
      units += std::max(ov, 0.0);
    } else {
      units += 1.0;  // interior intervals are fully covered
    }
  }
  return units;
}

double cantor_interval_ball_mass(const CantorMeasure& cm, Vec y, double t) {
  const double dy = y.y - cm.corner.y;
  if (std::abs(dy) > t) return 0.0;
  const double w = std::sqrt(std::max(t * t - dy * dy, 0.0));
  const double scale3 = std::pow(3.0, cm.level);
  const double a = (y.x - w - cm.corner.x) / cm.extent * scale3;
  const double b = (y.x + w - cm.corner.x) / cm.extent * scale3;
  const double units = cantor_window_mass_units(cm.level, a, b);
  return cm.total * units / std::pow(2.0, cm.level);
}

// Cantor dust: recursive exact ball mass (disk clipping at the leaves).
double cantor_dust_mass_rec(const CantorMeasure& cm, Vec y, double t, int depth,
                            double cx, double cy, double side) {
  // distance from y to the closed square [cx,cx+side]^... (2D)
  const double qx = std::clamp(y.x, cx, cx + side);
  const double qy = std::clamp(y.y, cy, cy + side);
  const double dmin = std::hypot(y.x - qx, y.y - qy);
  if (dmin > t) return 0.0;
  const double mass_here = cm.total / std::pow(4.0, depth);
  const double fx = std::max(std::abs(y.x - cx), std::abs(y.x - (cx + side)));
  const double fy = std::max(std::abs(y.y - cy), std::abs(y.y - (cy + side)));
  const double dmax = std::hypot(fx, fy);
  if (dmax <= t) return mass_here;
  if (depth == cm.level) {
    const std::vector<Vec> sq = {{cx, cy, 0}, {cx + side, cy, 0},
                                 {cx + side, cy + side, 0}, {cx, cy + side, 0}};
    const double dens = mass_here / (side * side);
    return dens * polygon_disk_area(sq, y, t);
  }
  const double s3 = side / 3.0;
  double acc = 0.0;
  for (double ox : {0.0, 2.0 * s3})
    for (double oy : {0.0, 2.0 * s3})
      acc += cantor_dust_mass_rec(cm, y, t, depth + 1, cx + ox, cy + oy, s3);
  return acc;
}

double cantor_ball_mass(const CantorMeasure& cm, Vec y, double t) {
  if (t < 0.0) return 0.0;
  if (cm.base == CantorMeasure::Base::Interval) return cantor_interval_ball_mass(cm, y, t);
  return cantor_dust_mass_rec(cm, y, t, 0, cm.corner.x, cm.corner.y, cm.extent);
}

// ---- grid helpers --------------------------------------------------------

struct CellBox {
  Vec lo, hi;
};

CellBox cell_box(const GridMeasure& g, const std::array<int, 3>& idx, int dim) {
  CellBox b;
  b.lo = {g.origin.x + idx[0] * g.cell_side, g.origin.y + idx[1] * g.cell_side,
          dim == 3 ? g.origin.z + idx[2] * g.cell_side : 0.0};
  b.hi = {b.lo.x + g.cell_side, b.lo.y + g.cell_side, dim == 3 ? b.lo.z + g.cell_side : 0.0};
  return b;
}

double box_min_dist(const CellBox& b, Vec y) {
  const double dx = std::max({b.lo.x - y.x, 0.0, y.x - b.hi.x});
  const double dy = std::max({b.lo.y - y.y, 0.0, y.y - b.hi.y});
  const double dz = std::max({b.lo.z - y.z, 0.0, y.z - b.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double box_max_dist(const CellBox& b, Vec y) {
  const double dx = std::max(std::abs(y.x - b.lo.x), std::abs(y.x - b.hi.x));
  const double dy = std::max(std::abs(y.y - b.lo.y), std::abs(y.y - b.hi.y));
  const double dz = std::max(std::abs(y.z - b.lo.z), std::abs(y.z - b.hi.z));
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

MassBound grid_ball_mass(const GridMeasure& g, int dim, Vec y, double t) {
  MassBound out;
  const double vol = std::pow(g.cell_side, dim);
  for (size_t i = 0; i < g.cells.size(); ++i) {
    const CellBox b = cell_box(g, g.cells[i], dim);
    if (box_min_dist(b, y) > t) continue;
    const double m = g.density_at(i) * vol;
    out.upper += m;
    if (box_max_dist(b, y) <= t) out.lower += m;
  }
  return out;
}

double polyline_ball_mass(const PolylineMeasure& pm, Vec y, double t) {
  double acc = 0.0;
  for (const auto& chain : pm.chains) {
    for (size_t i = 0; i + 1 < chain.size(); ++i)
      acc += segment_ball_clip_length(chain[i], chain[i + 1], y, t);
    if (pm.closed && chain.size() > 2)
      acc += segment_ball_clip_length(chain.back(), chain.front(), y, t);
  }
  return pm.rate * acc;
}

double surface_ball_mass(const SurfaceMeasure& sm, Vec y, double t) {
  double acc = 0.0;
  for (const auto& ch : sm.charts) acc += triangle_ball_area(ch.xyz, y, t);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

double total_mass(const Measure& m) {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          double s = 0.0;
          for (const auto& [p, mass] : rep.atoms) s += mass;
          return s;
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          double s = 0.0;
          const double vol = std::pow(rep.cell_side, m.dim);
          for (size_t i = 0; i < rep.cells.size(); ++i) s += rep.density_at(i) * vol;
          return s;
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          double s = 0.0;
          for (const auto& c : rep.chains) s += chain_length(c, rep.closed);
          return rep.rate * s;
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          return surface_measure_total(rep);
        } else {
          return rep.total;
        }
      },
      m.rep);
}

MassBound ball_mass_bound(const Measure& m, Vec y, double t) {
  if (t < 0.0) throw std::domain_error("ball_mass: t must be >= 0");
  return std::visit(
      [&](const auto& rep) -> MassBound {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          double s = 0.0;
          for (const auto& [p, mass] : rep.atoms)
            if (dist(p, y) <= t) s += mass;
          return {s, s};
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          return grid_ball_mass(rep, m.dim, y, t);
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          const double v = polyline_ball_mass(rep, y, t);
          return {v, v};
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          const double v = surface_ball_mass(rep, y, t);
          return {v, v};
        } else {
          const double v = cantor_ball_mass(rep, y, t);
          return {v, v};
        }
      },
      m.rep);
}

double ball_mass(const Measure& m, Vec y, double t) { return ball_mass_bound(m, y, t).mid(); }

// ---------------------------------------------------------------------------
// Support helpers
// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> support_extreme_points(const Measure& m) {
  std::vector<Vec> pts;
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& [p, mass] : rep.atoms) pts.push_back(p);
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          for (const auto& c : rep.cells) {
            const CellBox b = cell_box(rep, c, m.dim);
            pts.push_back(0.5 * (b.lo + b.hi));
          }
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          for (const auto& c : rep.chains) pts.insert(pts.end(), c.begin(), c.end());
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          for (const auto& ch : rep.charts)
            pts.insert(pts.end(), ch.xyz.begin(), ch.xyz.end());
        } else {
          pts.push_back(rep.corner);
          if (rep.base == CantorMeasure::Base::Interval) {
            pts.push_back(rep.corner + Vec{rep.extent, 0, 0});
          } else {
            pts.push_back(rep.corner + Vec{rep.extent, 0, 0});
            pts.push_back(rep.corner + Vec{0, rep.extent, 0});
            pts.push_back(rep.corner + Vec{rep.extent, rep.extent, 0});
          }
        }
      },
      m.rep);
  return pts;
}

}  // namespace

Ball support_ball(const Measure& m) {
  Ball b = min_enclosing_ball(support_extreme_points(m), m.dim);
  if (const auto* g = std::get_if<GridMeasure>(&m.rep)) {
    b.radius += 0.5 * g->cell_side * std::sqrt((double)m.dim);
  }
  return b;
}

std::pair<Vec, Vec> support_bounding_box(const Measure& m) {
  const auto pts = support_extreme_points(m);
  Vec lo = pts[0], hi = pts[0];
  for (const Vec& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  if (const auto* g = std::get_if<GridMeasure>(&m.rep)) {
    const double h = 0.5 * g->cell_side;
    lo = lo - Vec{h, h, m.dim == 3 ? h : 0.0};
    hi = hi + Vec{h, h, m.dim == 3 ? h : 0.0};
  }
  return {lo, hi};
}

std::vector<Vec> support_sample_points(const Measure& m, int budget) {
  std::vector<Vec> pts;
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& [p, mass] : rep.atoms) pts.push_back(p);
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          for (const auto& c : rep.cells) {
            const CellBox b = cell_box(rep, c, m.dim);
            pts.push_back(0.5 * (b.lo + b.hi));
          }
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          for (const auto& c : rep.chains) {
            for (size_t i = 0; i + 1 < c.size(); ++i) {
              pts.push_back(c[i]);
              pts.push_back(0.5 * (c[i] + c[i + 1]));
            }
            pts.push_back(c.back());
          }
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          for (const auto& ch : rep.charts) {
            for (const auto& v : ch.xyz) pts.push_back(v);
            pts.push_back((1.0 / 3.0) * (ch.xyz[0] + ch.xyz[1] + ch.xyz[2]));
          }
        } else {
          int j = 0;
          while ((1 << (j + 1)) <= budget && j < rep.level) ++j;
          const auto& lefts = cantor_lefts(j);
          const double s3 = std::pow(3.0, j);
          for (int64_t L : lefts) {
            const double mid = ((double)L + 0.5) / s3;
            if (rep.base == CantorMeasure::Base::Interval) {
              pts.push_back(rep.corner + Vec{mid * rep.extent, 0, 0});
            } else {
              for (int64_t Ly : lefts)
                pts.push_back(rep.corner + Vec{mid * rep.extent,
                                               (((double)Ly + 0.5) / s3) * rep.extent, 0});
            }
          }
        }
      },
      m.rep);
  if ((int)pts.size() > budget) {
    std::vector<Vec> out;
    const size_t stride = (pts.size() + budget - 1) / budget;
    for (size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
    return out;
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Modulus of continuity
// ---------------------------------------------------------------------------

namespace {

ModulusBound atomic_modulus_exact(const Measure& m, const AtomicMeasure& am, double t) {
  std::vector<Vec> cand;
  for (const auto& [p, mass] : am.atoms) cand.push_back(p);
  const size_t n = am.atoms.size();
  const double tr = t * (1.0 + kEps);  // absorb fp noise on constructed centers
  if (m.dim == 2) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        if (dist(am.atoms[i].first, am.atoms[j].first) > 2.0 * t) continue;
        for (const Vec& c : circle_circle_points(am.atoms[i].first, am.atoms[j].first, t))
          cand.push_back(c);
      }
  } else {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        if (dist(am.atoms[i].first, am.atoms[j].first) > 2.0 * t) continue;
        cand.push_back(0.5 * (am.atoms[i].first + am.atoms[j].first));
        for (size_t k = j + 1; k < n; ++k) {
          const auto cc = circumcenter3d_triangle(am.atoms[i].first, am.atoms[j].first,
                                                  am.atoms[k].first);
          if (cc.ok && dist(cc.center, am.atoms[i].first) <= tr) cand.push_back(cc.center);
          for (size_t l = k + 1; l < n; ++l) {
            const auto c4 = circumcenter3d_tetra(am.atoms[i].first, am.atoms[j].first,
                                                 am.atoms[k].first, am.atoms[l].first);
            if (c4.ok && dist(c4.center, am.atoms[i].first) <= tr) cand.push_back(c4.center);
          }
        }
      }
  }
  double best = 0.0;
  for (const Vec& c : cand)
    best = std::max(best, ball_mass_bound(m, c, tr).upper);
  return {t, best, best, ModulusBound::Mode::Exact};
}

ModulusBound cantor_interval_modulus_exact(const Measure& m, const CantorMeasure& cm,
                                           double t) {
  // sliding-window mass is piecewise linear in the center; the optimal
  // center sits on the baseline with a window edge at an interval endpoint
  const auto& lefts = cantor_lefts(cm.level);
  const double s3 = std::pow(3.0, cm.level);
  double best = 0.0;
  auto eval = [&](double cx_units) {
    const double w_units = t / cm.extent * s3;
    const double u = cantor_window_mass_units(cm.level, cx_units - w_units, cx_units + w_units);
    best = std::max(best, cm.total * u / std::pow(2.0, cm.level));
  };
  const double w_units = t / cm.extent * s3;
  for (int64_t L : lefts) {
    eval((double)L + w_units);
    eval((double)L - w_units);
    eval((double)(L + 1) + w_units);
    eval((double)(L + 1) - w_units);
  }
  (void)m;
  return {t, best, best, ModulusBound::Mode::Exact};
}

// straight polylines: sup mass = rate * min(2t, total length)
bool polyline_is_straight(const PolylineMeasure& pm) {
  if (pm.chains.size() != 1 || pm.closed) return false;
  const auto& c = pm.chains[0];
  if (c.size() < 2) return false;
  const Vec d0 = c.back() - c.front();
  const double scale = norm(d0);
  for (size_t i = 1; i + 1 < c.size(); ++i) {
    const Vec v = c[i] - c.front();
    if (norm(cross(d0, v)) > 1e-12 * scale * scale) return false;
  }
  // monotone along the direction (no doubling back)
  double prev = -1e300;
  for (const Vec& p : c) {
    const double s = dot(p - c.front(), d0);
    if (s < prev) return false;
    prev = s;
  }
  return true;
}

struct BBNode {
  Vec lo;
  double size;
  double ub;
  bool operator<(const BBNode& o) const { return ub < o.ub; }
};

ModulusBound modulus_branch_bound(const Measure& m, double t, const ModulusOptions& opts) {
  const auto pts = support_extreme_points(m);
  Vec blo = pts[0], bhi = pts[0];
  for (const Vec& p : pts) {
    blo = {std::min(blo.x, p.x), std::min(blo.y, p.y), std::min(blo.z, p.z)};
    bhi = {std::max(bhi.x, p.x), std::max(bhi.y, p.y), std::max(bhi.z, p.z)};
  }
  double pad = t;
  if (const auto* g = std::get_if<GridMeasure>(&m.rep))
    pad += g->cell_side;  // cell centers stand in for the full cells
  blo = blo - Vec{pad, pad, m.dim == 3 ? pad : 0.0};
  const double size0 = std::max({bhi.x - blo.x, bhi.y - blo.y, bhi.z - blo.z}) + 2.0 * pad;

  double min_size = std::max(t * 1e-6, size0 * 1e-9);
  if (const auto* g = std::get_if<GridMeasure>(&m.rep))
    min_size = std::max(min_size, g->cell_side / 8.0);

  auto eval_lower = [&](Vec c) { return ball_mass_bound(m, c, t).lower; };
  auto eval_upper = [&](Vec c, double half_diag) {
    return ball_mass_bound(m, c, t + half_diag).upper;
  };

  const double sqd = std::sqrt((double)m.dim);
  double lower = 0.0;
  std::priority_queue<BBNode> pq;
  auto push = [&](Vec lo, double size) {
    const Vec c = lo + 0.5 * Vec{size, size, m.dim == 3 ? size : 0.0};
    lower = std::max(lower, eval_lower(c));
    pq.push({lo, size, eval_upper(c, 0.5 * size * sqd)});
  };
  push(blo, size0);

  int evals = 1;
  double upper = pq.top().ub;
  while (!pq.empty() && evals < opts.max_evals) {
    const BBNode node = pq.top();
    upper = std::max(lower, node.ub);
    if (node.ub <= lower * (1.0 + opts.gap_rel_tol) + 1e-300) break;
    if (node.size < min_size) break;  // resolution floor reached
    pq.pop();
    const double h = 0.5 * node.size;
    for (int mask = 0; mask < (1 << m.dim); ++mask) {
      Vec lo = node.lo;
      if (mask & 1) lo.x += h;
      if (mask & 2) lo.y += h;
      if (m.dim == 3 && (mask & 4)) lo.z += h;
      push(lo, h);
      ++evals;
    }
  }
  if (!pq.empty()) upper = std::max(lower, pq.top().ub);
  return {t, lower, upper, ModulusBound::Mode::Certified};
}

}  // namespace

ModulusBound modulus_of_continuity(const Measure& m, double t, const ModulusOptions& opts) {
  if (t < 0.0) throw std::domain_error("modulus_of_continuity: t must be >= 0");
  const double M = total_mass(m);
  if (M == 0.0) return {t, 0.0, 0.0, ModulusBound::Mode::Exact};

  const Ball sb = support_ball(m);
  if (t >= sb.radius) return {t, M, M, ModulusBound::Mode::Exact};

  if (const auto* am = std::get_if<AtomicMeasure>(&m.rep)) {
    // candidate sets grow as n^2 (2D) / n^4 (3D); beyond that, certify instead
    const size_t cap = m.dim == 2 ? 200 : 48;
    if (t == 0.0 || am->atoms.size() <= cap) return atomic_modulus_exact(m, *am, t);
    return modulus_branch_bound(m, t, opts);
  }
  if (t == 0.0) return {t, 0.0, 0.0, ModulusBound::Mode::Exact};
  if (const auto* cm = std::get_if<CantorMeasure>(&m.rep)) {
    if (cm->base == CantorMeasure::Base::Interval)
      return cantor_interval_modulus_exact(m, *cm, t);
  }
  if (const auto* pm = std::get_if<PolylineMeasure>(&m.rep)) {
    if (polyline_is_straight(*pm)) {
      double L = 0.0;
      for (const auto& c : pm->chains) L += chain_length(c, pm->closed);
      const double v = pm->rate * std::min(2.0 * t, L);
      return {t, v, v, ModulusBound::Mode::Exact};
    }
  }
  return modulus_branch_bound(m, t, opts);
}

// ---------------------------------------------------------------------------
// Radial counting
// ---------------------------------------------------------------------------

namespace {

// hat_d * int_a^x t^(1-d) dt for 0 < a <= x
double radial_piece(double a, double x, Dimension d) {
  const double hd = (double)hat_d(d);
  if (d.value == 2) return std::log(x / a);
  const double dd = (double)d.value;
  return hd * (std::pow(a, 2.0 - dd) - std::pow(x, 2.0 - dd)) / (dd - 2.0);
}

double annulus_numeric(const Measure& m, Vec y, double x0, double x1, Dimension d) {
  const double u1 = std::log(x1);
  const double u0 = x0 > 0.0 ? std::log(x0) : u1 - 45.0;
  const double dd = (double)d.value;
  auto g = [&](double u) {
    const double t = std::exp(u);
    return ball_mass_bound(m, y, t).upper * std::exp(u * (2.0 - dd));
  };
  const double hd = (double)hat_d(d);
  return hd * adaptive_simpson(g, u0, u1, 1e-10).value;
}

}  // namespace

double radial_counting_annulus(const Measure& m, Vec y, double x0, double x1, Dimension d) {
  if (!(x0 >= 0.0 && x1 > x0)) throw std::domain_error("radial_counting_annulus: need 0 <= x0 < x1");
  if (const auto* am = std::get_if<AtomicMeasure>(&m.rep)) {
    double acc = 0.0;
    for (const auto& [p, mass] : am->atoms) {
      const double r = dist(p, y);
      if (r > x1) continue;
      const double a = std::max(r, x0);
      if (a <= 0.0) throw std::domain_error("radial_counting_annulus: atom at the center with x0 = 0");
      acc += mass * radial_piece(a, x1, d);
    }
    return acc;
  }
  return annulus_numeric(m, y, x0, x1, d);
}

ExtendedReal radial_counting_N(const Measure& m, Vec y, double x, Dimension d) {
  if (!(x > 0.0)) throw std::domain_error("radial_counting_N: x must be > 0");
  if (const auto* am = std::get_if<AtomicMeasure>(&m.rep)) {
    double acc = 0.0;
    for (const auto& [p, mass] : am->atoms) {
      const double r = dist(p, y);
      if (r == 0.0) return ExtendedReal::pos_inf();
      if (r > x) continue;
      acc += mass * radial_piece(r, x, d);
    }
    return ExtendedReal(acc);
  }
  return ExtendedReal(annulus_numeric(m, y, 0.0, x, d));
}

// ---------------------------------------------------------------------------
// Curves and surfaces
// ---------------------------------------------------------------------------

Measure curve_measure_from_graph(const std::vector<double>& xs,
                                 const std::vector<double>& ys, double q, double rate) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("curve_measure_from_graph: need matching samples, >= 2");
  std::vector<Vec> chain;
  chain.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      const double dx = xs[i] - xs[i - 1];
      if (!(dx > 0.0)) throw std::invalid_argument("curve_measure_from_graph: xs must increase");
      const double slope = std::abs(ys[i] - ys[i - 1]) / dx;
      if (slope > q * (1.0 + kEps))
        throw std::invalid_argument("curve_measure_from_graph: slope bound violated at segment " +
                                    std::to_string(i - 1));
    }
    chain.push_back({xs[i], ys[i], 0.0});
  }
  Measure m;
  m.dim = 2;
  PolylineMeasure pm;
  pm.chains = {std::move(chain)};
  pm.rate = rate;
  pm.graph_slope = q;
  m.rep = std::move(pm);
  double rad = 0.0;
  for (const Vec& p : std::get<PolylineMeasure>(m.rep).chains[0]) rad = std::max(rad, norm(p));
  m.bounding_radius = rad;
  return m;
}

namespace {

void check_polyline_injective(const PolylineMeasure& pm) {
  if (pm.chains.size() != 1) return;  // clipped multi-chain pieces skip the check
  const auto& c = pm.chains[0];
  std::vector<std::pair<Vec, Vec>> segs;
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    if (dist(c[i], c[i + 1]) == 0.0)
      throw std::invalid_argument("polyline: repeated vertex");
    segs.push_back({c[i], c[i + 1]});
  }
  if (pm.closed && c.size() > 2) segs.push_back({c.back(), c.front()});
  const size_t n = segs.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) {
      if (pm.closed && i == 0 && j == n - 1) continue;  // loop closure adjacency
      if (segments_intersect2d(segs[i].first, segs[i].second, segs[j].first, segs[j].second))
        throw std::invalid_argument("polyline: self-intersection between segments " +
                                    std::to_string(i) + " and " + std::to_string(j));
    }
}

}  // namespace

LipschitzConstants lipschitz_constants(const Measure& m) {
  if (const auto* pm = std::get_if<PolylineMeasure>(&m.rep)) {
    if (pm->chains.size() != 1)
      throw std::invalid_argument("lipschitz_constants: single-chain polyline required");
    check_polyline_injective(*pm);
    const auto& c = pm->chains[0];
    std::vector<double> s(c.size(), 0.0);
    for (size_t i = 1; i < c.size(); ++i) s[i] = s[i - 1] + dist(c[i - 1], c[i]);
    const double L = pm->closed ? s.back() + dist(c.back(), c.front()) : s.back();
    LipschitzConstants out{0.0, 0.0};
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j) {
        double ds = s[j] - s[i];
        if (pm->closed) ds = std::min(ds, L - ds);
        const double chord = dist(c[i], c[j]);
        if (chord < 1e-14 * ds)
          throw std::invalid_argument("lipschitz_constants: curve is not bilipschitz");
        out.lip = std::max(out.lip, chord / ds);
        out.lip_inv = std::max(out.lip_inv, ds / chord);
      }
    return out;
  }
  if (const auto* sm = std::get_if<SurfaceMeasure>(&m.rep)) {
    std::vector<std::pair<Vec, Vec>> verts;  // (ref, xyz)
    for (const auto& ch : sm->charts) {
      if (triangle_area(ch.xyz) == 0.0 || triangle_area(ch.ref) == 0.0)
        throw std::invalid_argument("lipschitz_constants: degenerate triangle");
      for (int i = 0; i < 3; ++i) verts.push_back({ch.ref[i], ch.xyz[i]});
    }
    LipschitzConstants out{0.0, 0.0};
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j) {
        const double dr = dist(verts[i].first, verts[j].first);
        const double dx = dist(verts[i].second, verts[j].second);
        if (dr == 0.0 && dx == 0.0) continue;  // shared chart vertex
        if (dr == 0.0 || dx == 0.0)
          throw std::invalid_argument("lipschitz_constants: surface parameterization not injective");
        out.lip = std::max(out.lip, dx / dr);
        out.lip_inv = std::max(out.lip_inv, dr / dx);
      }
    return out;
  }
  throw std::invalid_argument("lipschitz_constants: curve or surface measure required");
}

double surface_measure_total(const SurfaceMeasure& s) {
  double acc = 0.0;
  for (const auto& ch : s.charts) {
    const double a = triangle_area(ch.xyz);
    if (a == 0.0) throw std::invalid_argument("surface_measure_total: degenerate triangle");
    acc += a;
  }
  return acc;
}

// ---------------------------------------------------------------------------

void validate_measure(const Measure& m) {
  if (m.dim != 2 && m.dim != 3)
    throw std::invalid_argument("measure: ambient dimension must be 2 or 3");
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& [p, mass] : rep.atoms) {
            (void)p;
            if (!(mass > 0.0)) throw std::invalid_argument("atomic measure: masses must be > 0");
          }
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          if (!(rep.cell_side > 0.0)) throw std::invalid_argument("grid measure: cell side must be > 0");
          if (!rep.density.empty() && rep.density.size() != rep.cells.size())
            throw std::invalid_argument("grid measure: density/cell count mismatch");
          for (double d : rep.density)
            if (!(d > 0.0)) throw std::invalid_argument("grid measure: densities must be > 0");
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          if (!(rep.rate > 0.0)) throw std::invalid_argument("polyline measure: rate must be > 0");
          for (const auto& c : rep.chains)
            if (c.size() < 2) throw std::invalid_argument("polyline measure: chain needs >= 2 vertices");
          check_polyline_injective(rep);
          if (m.dim != 2) throw std::invalid_argument("polyline measure: d = 2 only");
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          if (m.dim != 3) throw std::invalid_argument("surface measure: d = 3 only");
          for (const auto& ch : rep.charts)
            if (triangle_area(ch.xyz) == 0.0)
              throw std::invalid_argument("surface measure: degenerate triangle");
        } else {
          if (rep.level < 1 || rep.level > 20)
            throw std::invalid_argument("cantor measure: level must be in [1, 20]");
          if (!(rep.extent > 0.0) || !(rep.total > 0.0))
            throw std::invalid_argument("cantor measure: extent and total must be > 0");
        }
      },
      m.rep);
  const Ball sb = support_ball(m);
  if (norm(sb.center) + sb.radius > m.bounding_radius * (1.0 + 1e-9) + 1e-12)
    throw std::invalid_argument("measure: support leaves the declared bounding ball");
}

Measure restrict_to_ball(const Measure& m, double r) {
  Measure out;
  out.dim = m.dim;
  out.bounding_radius = std::min(m.bounding_radius, r);
  out.label = m.label.empty() ? m.label : m.label + "|r=" + std::to_string(r);
  if (const auto* am = std::get_if<AtomicMeasure>(&m.rep)) {
    AtomicMeasure res;
    for (const auto& [p, mass] : am->atoms)
      if (norm(p) <= r) res.atoms.push_back({p, mass});
    out.rep = std::move(res);
    return out;
  }
  if (const auto* gm = std::get_if<GridMeasure>(&m.rep)) {
    GridMeasure res = *gm;
    res.cells.clear();
    res.density.clear();
    for (size_t i = 0; i < gm->cells.size(); ++i) {
      const CellBox b = cell_box(*gm, gm->cells[i], m.dim);
      if (box_max_dist(b, Vec{0, 0, 0}) <= r) {
        res.cells.push_back(gm->cells[i]);
        if (!gm->density.empty()) res.density.push_back(gm->density[i]);
      }
    }
    out.rep = std::move(res);
    return out;
  }
  if (const auto* pm = std::get_if<PolylineMeasure>(&m.rep)) {
    PolylineMeasure res;
    res.rate = pm->rate;
    res.graph_slope = pm->graph_slope;
    for (const auto& chain : pm->chains) {
      std::vector<std::pair<Vec, Vec>> segs;
      for (size_t i = 0; i + 1 < chain.size(); ++i) segs.push_back({chain[i], chain[i + 1]});
      if (pm->closed && chain.size() > 2) segs.push_back({chain.back(), chain.front()});
      std::vector<Vec> cur;
      for (const auto& [a, b] : segs) {
        const auto [t0, t1] = segment_ball_clip(a, b, Vec{0, 0, 0}, r);
        if (t1 <= t0) {
          if (cur.size() >= 2) res.chains.push_back(cur);
          cur.clear();
          continue;
        }
        const Vec p0 = a + t0 * (b - a);
        const Vec p1 = a + t1 * (b - a);
        if (t0 > 0.0 || cur.empty()) {
          if (cur.size() >= 2) res.chains.push_back(cur);
          cur.clear();
          cur.push_back(p0);
        }
        cur.push_back(p1);
        if (t1 < 1.0) {
          if (cur.size() >= 2) res.chains.push_back(cur);
          cur.clear();
        }
      }
      if (cur.size() >= 2) res.chains.push_back(cur);
    }
    out.rep = std::move(res);
    return out;
  }
  throw std::invalid_argument("restrict_to_ball: unsupported measure representation");
}

}  // namespace potbound
