#include "potbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace potbound {

double norm(Vec a) { return std::sqrt(dot(a, a)); }
double dist(Vec a, Vec b) { return norm(a - b); }

std::pair<double, double> segment_ball_clip(Vec p0, Vec p1, Vec c, double r) {
  const Vec d = p1 - p0;
  const Vec m = p0 - c;
  const double a = dot(d, d);
  if (a == 0.0) return (norm(m) <= r) ? std::make_pair(0.0, 1.0) : std::make_pair(1.0, 0.0);
  const double b = 2.0 * dot(m, d);
  const double cc = dot(m, m) - r * r;
  const double disc = b * b - 4.0 * a * cc;
  if (disc < 0.0) return {1.0, 0.0};
  const double sq = std::sqrt(disc);
  double t0 = (-b - sq) / (2.0 * a);
  double t1 = (-b + sq) / (2.0 * a);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  return {t0, t1};
}

double segment_ball_clip_length(Vec p0, Vec p1, Vec c, double r) {
  const auto [t0, t1] = segment_ball_clip(p0, p1, c, r);
  if (t1 <= t0) return 0.0;
  return (t1 - t0) * dist(p0, p1);
}

namespace {

// Signed area of disk(c,r) intersected with triangle (c, A, B); the sign
// follows the orientation of (A-c, B-c). Summing over the edges of a simple
// polygon yields the exact polygon/disk intersection area.
double disk_triangle_signed(Vec c, double r, Vec A, Vec B) {
  const double ax = A.x - c.x, ay = A.y - c.y;
  const double bx = B.x - c.x, by = B.y - c.y;
  const double crossab = ax * by - ay * bx;
  if (crossab == 0.0) return 0.0;
  const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
  const bool ina = la <= r, inb = lb <= r;
  if (ina && inb) return 0.5 * crossab;

  auto sector = [&](double x0, double y0, double x1, double y1) {
    // signed circular sector between directions (x0,y0) -> (x1,y1)
    double ang = std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
    return 0.5 * r * r * ang;
  };

  // circle/segment AB intersections in segment parameter
  const double dx = bx - ax, dy = by - ay;
  const double a2 = dx * dx + dy * dy;
  const double b2 = 2.0 * (ax * dx + ay * dy);
  const double c2 = ax * ax + ay * ay - r * r;
  const double disc = b2 * b2 - 4.0 * a2 * c2;
  double t0 = 2.0, t1 = -2.0;
  if (disc > 0.0 && a2 > 0.0) {
    const double sq = std::sqrt(disc);
    t0 = (-b2 - sq) / (2.0 * a2);
    t1 = (-b2 + sq) / (2.0 * a2);
  }
  const bool hit0 = t0 > 0.0 && t0 < 1.0;
  const bool hit1 = t1 > 0.0 && t1 < 1.0;
  const double p0x = ax + t0 * dx, p0y = ay + t0 * dy;
  const double p1x = ax + t1 * dx, p1y = ay + t1 * dy;

  if (ina && !inb) {
    // triangle (a, exit) + sector (exit, b)
    return 0.5 * (ax * p1y - ay * p1x) + sector(p1x, p1y, bx, by);
  }
  if (!ina && inb) {
    return sector(ax, ay, p0x, p0y) + 0.5 * (p0x * by - p0y * bx);
  }
  // both ends outside
  if (hit0 && hit1) {
    return sector(ax, ay, p0x, p0y) + 0.5 * (p0x * p1y - p0y * p1x) +
           sector(p1x, p1y, bx, by);
  }
  return sector(ax, ay, bx, by);
}

}  // namespace

double polygon_disk_area(const std::vector<Vec>& poly, Vec c, double r) {
  double acc = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    acc += disk_triangle_signed(c, r, poly[i], poly[(i + 1) % n]);
  }
  return std::abs(acc);
}

double triangle_area(const std::array<Vec, 3>& tri) {
  return 0.5 * norm(cross(tri[1] - tri[0], tri[2] - tri[0]));
}

double triangle_ball_area(const std::array<Vec, 3>& tri, Vec c, double r) {
  const Vec u0 = tri[1] - tri[0];
  const Vec v0 = tri[2] - tri[0];
  Vec n = cross(u0, v0);
  const double nn = norm(n);
  if (nn == 0.0) throw std::domain_error("triangle_ball_area: degenerate triangle");
  n = (1.0 / nn) * n;
  const double h = dot(c - tri[0], n);
  if (std::abs(h) >= r) return 0.0;
  const double rho = std::sqrt(r * r - h * h);
  // orthonormal frame of the triangle plane, centered at the projection of c
  Vec e1 = u0;
  e1 = (1.0 / norm(e1)) * e1;
  Vec e2 = cross(n, e1);
  const Vec proj = c - h * n;
  std::vector<Vec> flat(3);
  for (int i = 0; i < 3; ++i) {
    const Vec w = tri[i] - proj;
    flat[i] = {dot(w, e1), dot(w, e2), 0.0};
  }
  return polygon_disk_area(flat, Vec{0, 0, 0}, rho);
}

CenterResult circumcenter2d(Vec a, Vec b, Vec c) {
  const double d = 2.0 * ((a.x - c.x) * (b.y - c.y) - (b.x - c.x) * (a.y - c.y));
  if (d == 0.0) return {Vec{}, false};
  const double a2 = dot(a - c, a - c), b2 = dot(b - c, b - c);
  Vec p;
  p.x = c.x + (a2 * (b.y - c.y) - b2 * (a.y - c.y)) / d;
  p.y = c.y + (b2 * (a.x - c.x) - a2 * (b.x - c.x)) / d;
  return {p, true};
}

CenterResult circumcenter3d_triangle(Vec a, Vec b, Vec c) {
  const Vec ab = b - a, ac = c - a;
  const Vec n = cross(ab, ac);
  const double nn = dot(n, n);
  if (nn == 0.0) return {Vec{}, false};
  const Vec p = a + (1.0 / (2.0 * nn)) *
                        (dot(ac, ac) * cross(n, ab) + dot(ab, ab) * cross(ac, n));
  return {p, true};
}

CenterResult circumcenter3d_tetra(Vec a, Vec b, Vec c, Vec d) {
  // solve 2 (p - a) . (x - a) = |x - a|^2 for x in {b,c,d}
  const Vec r1 = b - a, r2 = c - a, r3 = d - a;
  const double det = dot(r1, cross(r2, r3));
  if (det == 0.0) return {Vec{}, false};
  const Vec t = 0.5 * (dot(r1, r1) * cross(r2, r3) + dot(r2, r2) * cross(r3, r1) +
                       dot(r3, r3) * cross(r1, r2));
  return {a + (1.0 / det) * t, true};
}

std::vector<Vec> circle_circle_points(Vec a, Vec b, double r) {
  const double d = dist(a, b);
  if (d == 0.0 || d > 2.0 * r) return {};
  const Vec mid = 0.5 * (a + b);
  const double h2 = r * r - 0.25 * d * d;
  if (h2 <= 0.0) return {mid};
  const double h = std::sqrt(h2);
  const Vec dir = (1.0 / d) * (b - a);
  const Vec perp{-dir.y, dir.x, 0.0};
  return {mid + h * perp, mid - h * perp};
}

namespace {
int orient(Vec a, Vec b, Vec c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0.0) - (v < 0.0);
}
bool on_segment(Vec a, Vec b, Vec p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect2d(Vec a, Vec b, Vec c, Vec d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

namespace {

Ball ball2(Vec a, Vec b) {
  Ball r;
  r.center = 0.5 * (a + b);
  r.radius = 0.5 * dist(a, b);
  return r;
}

Ball ball3(Vec a, Vec b, Vec c, int dim) {
  // minimal ball through three points: circumcenter if it is inside the
  // triangle's long-edge test, else the diametral ball of the longest pair
  const auto cc = dim == 2 ? circumcenter2d(a, b, c) : circumcenter3d_triangle(a, b, c);
  Ball best = ball2(a, b);
  Ball t = ball2(a, c);
  if (t.radius > best.radius) best = t;
  t = ball2(b, c);
  if (t.radius > best.radius) best = t;
  const double eps = 1.0 + 1e-12;
  if (dist(best.center, a) <= best.radius * eps && dist(best.center, b) <= best.radius * eps &&
      dist(best.center, c) <= best.radius * eps)
    return best;
  if (!cc.ok) return best;
  Ball r;
  r.center = cc.center;
  r.radius = std::max({dist(cc.center, a), dist(cc.center, b), dist(cc.center, c)});
  return r;
}

Ball ball4(Vec a, Vec b, Vec c, Vec d) {
  const auto cc = circumcenter3d_tetra(a, b, c, d);
  if (!cc.ok) {
    Ball best = ball3(a, b, c, 3);
    for (const Ball t : {ball3(a, b, d, 3), ball3(a, c, d, 3), ball3(b, c, d, 3)})
      if (t.radius > best.radius) best = t;
    return best;
  }
  Ball r;
  r.center = cc.center;
  r.radius = std::max({dist(cc.center, a), dist(cc.center, b), dist(cc.center, c), dist(cc.center, d)});
  return r;
}

bool inside(const Ball& b, Vec p) { return dist(b.center, p) <= b.radius * (1.0 + 1e-12) + 1e-300; }

}  // namespace

Ball min_enclosing_ball(std::vector<Vec> pts, int dim) {
  if (pts.empty()) return {};
  std::mt19937_64 rng(0x2718281828ULL);
  std::shuffle(pts.begin(), pts.end(), rng);
  Ball ball{pts[0], 0.0};
  const size_t n = pts.size();
  for (size_t i = 1; i < n; ++i) {
    if (inside(ball, pts[i])) continue;
    ball = Ball{pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (inside(ball, pts[j])) continue;
      ball = ball2(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (inside(ball, pts[k])) continue;
        ball = ball3(pts[i], pts[j], pts[k], dim);
        if (dim == 3) {
          for (size_t l = 0; l < k; ++l) {
            if (inside(ball, pts[l])) continue;
            ball = ball4(pts[i], pts[j], pts[k], pts[l]);
          }
        }
      }
    }
  }
  return ball;
}

}  // namespace potbound
