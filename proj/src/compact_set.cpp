#include "potbound/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace potbound {

double CompactSet::cell_half_diag() const {
  return 0.5 * cell_side() * std::sqrt((double)dim());
}

Vec CompactSet::cell_corner(const std::array<int, 3>& c) const {
  const double s = cell_side();
  return {box.lo.x + c[0] * s, box.lo.y + c[1] * s,
          dim() == 3 ? box.lo.z + c[2] * s : 0.0};
}

Vec CompactSet::cell_center(const std::array<int, 3>& c) const {
  const double s = cell_side();
  Vec v = cell_corner(c);
  return {v.x + 0.5 * s, v.y + 0.5 * s, dim() == 3 ? v.z + 0.5 * s : 0.0};
}

namespace {

struct CellRect {
  Vec lo, hi;
};

CellRect cell_rect(const DyadicBox& box, int k, int i, int j, int l) {
  const double s = std::ldexp(box.size, -k);
  CellRect r;
  r.lo = {box.lo.x + i * s, box.lo.y + j * s, box.dim == 3 ? box.lo.z + l * s : 0.0};
  r.hi = {r.lo.x + s, r.lo.y + s, box.dim == 3 ? r.lo.z + s : 0.0};
  return r;
}

double rect_min_dist(const CellRect& r, Vec p) {
  const double dx = std::max({r.lo.x - p.x, 0.0, p.x - r.hi.x});
  const double dy = std::max({r.lo.y - p.y, 0.0, p.y - r.hi.y});
  const double dz = std::max({r.lo.z - p.z, 0.0, p.z - r.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool segment_rect_overlap(Vec a, Vec b, const CellRect& r, int dim) {
  // Liang-Barsky clip of the closed segment against the closed box
  double t0 = 0.0, t1 = 1.0;
  const double p[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
  const double lo[3] = {r.lo.x, r.lo.y, r.lo.z};
  const double hi[3] = {r.hi.x, r.hi.y, r.hi.z};
  const double s[3] = {a.x, a.y, a.z};
  for (int ax = 0; ax < dim; ++ax) {
    if (p[ax] == 0.0) {
      if (s[ax] < lo[ax] || s[ax] > hi[ax]) return false;
      continue;
    }
    double ta = (lo[ax] - s[ax]) / p[ax];
    double tb = (hi[ax] - s[ax]) / p[ax];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

bool arc_hits_rect(const ArcPrim& arc, const CellRect& r) {
  auto in_rect = [&](Vec p) {
    return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y && p.y <= r.hi.y;
  };
  auto on_arc = [&](double ang) {
    // normalize into [ang0, ang1] modulo 2 pi
    double a = ang;
    while (a < arc.ang0 - 1e-12) a += 2.0 * M_PI;
    return a <= arc.ang1 + 1e-12;
  };
  const Vec e0{arc.c.x + arc.radius * std::cos(arc.ang0),
               arc.c.y + arc.radius * std::sin(arc.ang0), 0.0};
  const Vec e1{arc.c.x + arc.radius * std::cos(arc.ang1),
               arc.c.y + arc.radius * std::sin(arc.ang1), 0.0};
  if (in_rect(e0) || in_rect(e1)) return true;
  // circle vs each closed edge of the rectangle
  const Vec corners[4] = {{r.lo.x, r.lo.y, 0}, {r.hi.x, r.lo.y, 0},
                          {r.hi.x, r.hi.y, 0}, {r.lo.x, r.hi.y, 0}};
  for (int e = 0; e < 4; ++e) {
    const Vec a = corners[e], b = corners[(e + 1) % 4];
    const Vec d = b - a, m = a - arc.c;
    const double A = dot(d, d);
    const double B = 2.0 * dot(m, d);
    const double C = dot(m, m) - arc.radius * arc.radius;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0 || A == 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double tt : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
      if (tt < -1e-12 || tt > 1.0 + 1e-12) continue;
      const Vec p = a + tt * d;
      if (on_arc(std::atan2(p.y - arc.c.y, p.x - arc.c.x))) return true;
    }
  }
  return false;
}

// Does [a, b] (units of 3^-level) meet the closed level-n triadic union?
bool cantor_units_hit(int level, double a, double b) {
  if (b < 0.0) return false;
  const auto& lefts = cantor_level_lefts(level);
  // the only candidate is the interval with the largest left endpoint <= b
  auto it = std::upper_bound(lefts.begin(), lefts.end(), (int64_t)std::floor(b));
  if (it == lefts.begin()) return false;
  --it;
  return (double)*it <= b && (double)(*it + 1) >= a;
}

// Triangle vs axis box overlap (separating axis test).
bool triangle_box_overlap(const std::array<Vec, 3>& tri, const CellRect& r) {
  const Vec c = 0.5 * (r.lo + r.hi);
  const Vec h = 0.5 * (r.hi - r.lo);
  const Vec v0 = tri[0] - c, v1 = tri[1] - c, v2 = tri[2] - c;
  auto axis_test = [&](Vec ax) {
    const double p0 = dot(v0, ax), p1 = dot(v1, ax), p2 = dot(v2, ax);
    const double mn = std::min({p0, p1, p2}), mx = std::max({p0, p1, p2});
    const double rad = h.x * std::abs(ax.x) + h.y * std::abs(ax.y) + h.z * std::abs(ax.z);
    return mn <= rad && mx >= -rad;
  };
  const Vec e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
  if (!axis_test({1, 0, 0}) || !axis_test({0, 1, 0}) || !axis_test({0, 0, 1})) return false;
  for (const Vec& e : {e0, e1, e2})
    for (const Vec& u : {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}}) {
      const Vec ax = cross(e, u);
      if (norm(ax) > 0.0 && !axis_test(ax)) return false;
    }
  return axis_test(cross(e0, e1));
}

void sort_cells(std::vector<std::array<int, 3>>& cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

struct IndexRange {
  int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
};

IndexRange index_range(const DyadicBox& box, int k, Vec lo, Vec hi) {
  const double s = std::ldexp(box.size, -k);
  const int n = 1 << k;
  IndexRange r;
  const double los[3] = {lo.x - box.lo.x, lo.y - box.lo.y, lo.z - box.lo.z};
  const double his[3] = {hi.x - box.lo.x, hi.y - box.lo.y, hi.z - box.lo.z};
  for (int ax = 0; ax < box.dim; ++ax) {
    r.lo[ax] = std::max(0, (int)std::floor(los[ax] / s) - 1);
    r.hi[ax] = std::min(n - 1, (int)std::floor(his[ax] / s) + 1);
  }
  return r;
}

template <typename HitFn>
void scan(const DyadicBox& box, int k, const IndexRange& rng,
          std::vector<std::array<int, 3>>& out, HitFn&& hit) {
  const bool threed = box.dim == 3;
  for (int i = rng.lo[0]; i <= rng.hi[0]; ++i)
    for (int j = rng.lo[1]; j <= rng.hi[1]; ++j)
      for (int l = rng.lo[2]; l <= (threed ? rng.hi[2] : 0); ++l) {
        if (hit(cell_rect(box, k, i, j, l))) out.push_back({i, j, l});
      }
}

}  // namespace

CompactSet rasterize(const SetPrimitive& prim, const DyadicBox& box, int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("rasterize: resolution out of range");
  CompactSet S;
  S.box = box;
  S.k = k;
  S.primitive = prim;
  std::visit(
      [&](const auto& pr) {
        using T = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<T, SegmentPrim>) {
          const Vec lo{std::min(pr.a.x, pr.b.x), std::min(pr.a.y, pr.b.y), std::min(pr.a.z, pr.b.z)};
          const Vec hi{std::max(pr.a.x, pr.b.x), std::max(pr.a.y, pr.b.y), std::max(pr.a.z, pr.b.z)};
          scan(box, k, index_range(box, k, lo, hi), S.cells,
               [&](const CellRect& r) { return segment_rect_overlap(pr.a, pr.b, r, box.dim); });
        } else if constexpr (std::is_same_v<T, DiskPrim>) {
          const Vec pad{pr.radius, pr.radius, box.dim == 3 ? pr.radius : 0.0};
          scan(box, k, index_range(box, k, pr.c - pad, pr.c + pad), S.cells,
               [&](const CellRect& r) { return rect_min_dist(r, pr.c) <= pr.radius; });
        } else if constexpr (std::is_same_v<T, RectPrim>) {
          scan(box, k, index_range(box, k, pr.lo, pr.hi), S.cells, [&](const CellRect& r) {
            return r.hi.x >= pr.lo.x && r.lo.x <= pr.hi.x && r.hi.y >= pr.lo.y &&
                   r.lo.y <= pr.hi.y &&
                   (box.dim == 2 || (r.hi.z >= pr.lo.z && r.lo.z <= pr.hi.z));
          });
        } else if constexpr (std::is_same_v<T, ArcPrim>) {
          const Vec pad{pr.radius, pr.radius, 0.0};
          scan(box, k, index_range(box, k, pr.c - pad, pr.c + pad), S.cells,
               [&](const CellRect& r) { return arc_hits_rect(pr, r); });
        } else if constexpr (std::is_same_v<T, CantorPrim>) {
          const Vec lo{pr.x0, pr.y0, 0.0}, hi{pr.x0 + pr.len, pr.y0, 0.0};
          const double s3 = std::pow(3.0, pr.level);
          scan(box, k, index_range(box, k, lo, hi), S.cells, [&](const CellRect& r) {
            if (pr.y0 < r.lo.y || pr.y0 > r.hi.y) return false;
            const double a = (r.lo.x - pr.x0) / pr.len * s3;
            const double b = (r.hi.x - pr.x0) / pr.len * s3;
            if (b < 0.0 || a > s3) return false;
            return cantor_units_hit(pr.level, a, b);
          });
        } else if constexpr (std::is_same_v<T, TrianglesPrim>) {
          for (const auto& tri : pr.tris) {
            Vec lo = tri[0], hi = tri[0];
            for (const Vec& v : tri) {
              lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
              hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
            }
            scan(box, k, index_range(box, k, lo, hi), S.cells,
                 [&](const CellRect& r) { return triangle_box_overlap(tri, r); });
          }
        } else {  // CellListPrim
          S.cells = pr.cells;
        }
      },
      prim);
  sort_cells(S.cells);
  if (S.cells.empty()) throw std::invalid_argument("rasterize: empty set");
  return S;
}

CompactSet rasterize_support(const Measure& m, const DyadicBox& box, int k) {
  CompactSet S;
  S.box = box;
  S.k = k;
  S.label = m.label;
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& [p, mass] : rep.atoms) {
            (void)mass;
            scan(box, k, index_range(box, k, p, p), S.cells, [&](const CellRect& r) {
              return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y && p.y <= r.hi.y &&
                     (box.dim == 2 || (p.z >= r.lo.z && p.z <= r.hi.z));
            });
          }
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
          for (const auto& c : rep.cells) {
            const Vec lo{rep.origin.x + c[0] * rep.cell_side, rep.origin.y + c[1] * rep.cell_side,
                         box.dim == 3 ? rep.origin.z + c[2] * rep.cell_side : 0.0};
            const Vec hi{lo.x + rep.cell_side, lo.y + rep.cell_side,
                         box.dim == 3 ? lo.z + rep.cell_side : 0.0};
            scan(box, k, index_range(box, k, lo, hi), S.cells, [&](const CellRect& r) {
              return r.hi.x >= lo.x && r.lo.x <= hi.x && r.hi.y >= lo.y && r.lo.y <= hi.y &&
                     (box.dim == 2 || (r.hi.z >= lo.z && r.lo.z <= hi.z));
            });
          }
        } else if constexpr (std::is_same_v<T, PolylineMeasure>) {
          for (const auto& chain : rep.chains) {
            for (size_t i = 0; i + 1 < chain.size(); ++i) {
              const Vec a = chain[i], b = chain[i + 1];
              const Vec lo{std::min(a.x, b.x), std::min(a.y, b.y), 0.0};
              const Vec hi{std::max(a.x, b.x), std::max(a.y, b.y), 0.0};
              scan(box, k, index_range(box, k, lo, hi), S.cells,
                   [&](const CellRect& r) { return segment_rect_overlap(a, b, r, 2); });
            }
            if (rep.closed && chain.size() > 2) {
              const Vec a = chain.back(), b = chain.front();
              const Vec lo{std::min(a.x, b.x), std::min(a.y, b.y), 0.0};
              const Vec hi{std::max(a.x, b.x), std::max(a.y, b.y), 0.0};
              scan(box, k, index_range(box, k, lo, hi), S.cells,
                   [&](const CellRect& r) { return segment_rect_overlap(a, b, r, 2); });
            }
          }
        } else if constexpr (std::is_same_v<T, SurfaceMeasure>) {
          TrianglesPrim tp;
          for (const auto& ch : rep.charts) tp.tris.push_back(ch.xyz);
          S = rasterize(tp, box, k);
          S.primitive.reset();
        } else {
          CantorPrim cp{rep.level, rep.corner.x, rep.corner.y, rep.extent};
          if (rep.base == CantorMeasure::Base::Square)
            throw std::invalid_argument("rasterize_support: cantor dust raster not supported");
          S = rasterize(cp, box, k);
        }
      },
      m.rep);
  sort_cells(S.cells);
  S.label = m.label;
  if (S.cells.empty()) throw std::invalid_argument("rasterize_support: empty support");
  return S;
}

CompactSet at_resolution(const CompactSet& S, int k_new) {
  if (k_new == S.k) return S;
  if (S.primitive) return rasterize(*S.primitive, S.box, k_new);
  CompactSet out;
  out.box = S.box;
  out.k = k_new;
  out.label = S.label;
  if (k_new > S.k) {
    const int f = 1 << (k_new - S.k);
    const bool threed = S.dim() == 3;
    for (const auto& c : S.cells)
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j)
          for (int l = 0; l < (threed ? f : 1); ++l)
            out.cells.push_back({c[0] * f + i, c[1] * f + j, threed ? c[2] * f + l : 0});
  } else {
    const int f = 1 << (S.k - k_new);
    for (const auto& c : S.cells)
      out.cells.push_back({c[0] / f, c[1] / f, S.dim() == 3 ? c[2] / f : 0});
  }
  sort_cells(out.cells);
  return out;
}

bool cell_in_ball(const CompactSet& S, const std::array<int, 3>& cell, Vec c, double r) {
  const Vec lo = S.cell_corner(cell);
  const double s = S.cell_side();
  const double dx = std::max(std::abs(c.x - lo.x), std::abs(c.x - (lo.x + s)));
  const double dy = std::max(std::abs(c.y - lo.y), std::abs(c.y - (lo.y + s)));
  const double dz = S.dim() == 3 ? std::max(std::abs(c.z - lo.z), std::abs(c.z - (lo.z + s))) : 0.0;
  return std::sqrt(dx * dx + dy * dy + dz * dz) <= r * (1.0 + 1e-12);
}

DyadicBox snug_box(const Measure& m, double pad_fraction) {
  const auto [lo, hi] = support_bounding_box(m);
  const double extent = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z, 1e-6});
  const double pad = extent * pad_fraction;
  DyadicBox box;
  box.dim = m.dim;
  box.lo = lo - Vec{pad, pad, m.dim == 3 ? pad : 0.0};
  box.size = extent + 2.0 * pad;
  return box;
}

}  // namespace potbound
