#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace potbound {

struct Vec {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec operator*(double s, Vec a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec cross(Vec a, Vec b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec a);
double dist(Vec a, Vec b);

// Parameter interval [t0,t1] of {p0 + t (p1-p0)} inside the closed ball
// B(c, r), intersected with [0,1]; empty -> t0 > t1.
std::pair<double, double> segment_ball_clip(Vec p0, Vec p1, Vec c, double r);

// Length of the part of segment [p0,p1] inside B(c, r).
double segment_ball_clip_length(Vec p0, Vec p1, Vec c, double r);

// Area of the intersection of a simple polygon (2D, x/y, any orientation)
// with the closed disk of radius r about c. Exact (arcs + chords).
double polygon_disk_area(const std::vector<Vec>& poly, Vec c, double r);

// Area of the part of a 3D triangle inside the closed ball B(c, r).
double triangle_ball_area(const std::array<Vec, 3>& tri, Vec c, double r);

double triangle_area(const std::array<Vec, 3>& tri);

// Circumcenters; ok=false when degenerate (collinear / coplanar inputs).
struct CenterResult {
  Vec center;
  bool ok;
};
CenterResult circumcenter2d(Vec a, Vec b, Vec c);
CenterResult circumcenter3d_triangle(Vec a, Vec b, Vec c);
CenterResult circumcenter3d_tetra(Vec a, Vec b, Vec c, Vec d);

// Both intersection points of circles of radius r about a and b (2D).
// Empty when the circles do not meet.
std::vector<Vec> circle_circle_points(Vec a, Vec b, double r);

// True if closed segments [a,b] and [c,d] share any point (2D).
bool segments_intersect2d(Vec a, Vec b, Vec c, Vec d);

struct Ball {
  Vec center;
  double radius = 0.0;
};

// Minimal enclosing ball (Welzl, deterministic shuffle). dim = 2 or 3.
Ball min_enclosing_ball(std::vector<Vec> pts, int dim);

}  // namespace potbound
