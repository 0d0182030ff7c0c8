#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "potbound/geometry.hpp"
#include "potbound/measure.hpp"

namespace potbound {

// Cubical bounding box; dyadic cells at resolution k have side size * 2^-k.
struct DyadicBox {
  Vec lo;
  double size = 1.0;
  int dim = 2;
};

// Analytic primitives with exact cell rasterization.
struct SegmentPrim { Vec a, b; };
struct DiskPrim { Vec c; double radius; };
struct RectPrim { Vec lo, hi; };   // filled axis box (2D rectangle / 3D box)
struct ArcPrim { Vec c; double radius; double ang0, ang1; };
struct CantorPrim { int level; double x0, y0, len; };  // triadic set on a horizontal line
struct TrianglesPrim { std::vector<std::array<Vec, 3>> tris; };
struct CellListPrim { std::vector<std::array<int, 3>> cells; };

using SetPrimitive = std::variant<SegmentPrim, DiskPrim, RectPrim, ArcPrim,
                                  CantorPrim, TrianglesPrim, CellListPrim>;

struct CompactSet {
  DyadicBox box;
  int k = 10;
  std::vector<std::array<int, 3>> cells;  // sorted occupied indices, third = 0 in 2D
  std::optional<SetPrimitive> primitive;
  std::string label;

  int dim() const { return box.dim; }
  double cell_side() const { return std::ldexp(box.size, -k); }
  double cell_half_diag() const;
  Vec cell_center(const std::array<int, 3>& c) const;
  Vec cell_corner(const std::array<int, 3>& c) const;  // lower corner
};

// Occupied cells are exactly those whose closed cell meets the primitive.
CompactSet rasterize(const SetPrimitive& prim, const DyadicBox& box, int k);

// Raster of the support of a measure (dyadic superset of the support).
CompactSet rasterize_support(const Measure& m, const DyadicBox& box, int k);

// Re-rasterize at a new resolution (primitives re-rasterized exactly;
// plain cell unions are subdivided, which preserves the union).
CompactSet at_resolution(const CompactSet& S, int k_new);

// Exact check: closed cell contained in the closed ball B(c, r)?
bool cell_in_ball(const CompactSet& S, const std::array<int, 3>& cell, Vec c, double r);

// A snug cubical box around a measure's support, padded a little.
DyadicBox snug_box(const Measure& m, double pad_fraction = 0.05);

}  // namespace potbound
