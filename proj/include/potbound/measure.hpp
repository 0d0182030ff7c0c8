#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "potbound/constants.hpp"
#include "potbound/defaults.hpp"
#include "potbound/extended_real.hpp"
#include "potbound/geometry.hpp"

namespace potbound {

// ---------------------------------------------------------------------------
// Concrete Borel measure representations. All masses are exact or carry
// certified two-sided bounds; every query is read-only.
// ---------------------------------------------------------------------------

struct AtomicMeasure {
  std::vector<std::pair<Vec, double>> atoms;  // (point, mass > 0)
};

struct GridMeasure {
  double cell_side = 1.0;
  Vec origin;                                // corner of cell (0,0[,0])
  std::vector<std::array<int, 3>> cells;     // occupied cell indices, k = 0 in 2D
  std::vector<double> density;               // per cell; empty means all 1
  double density_at(size_t i) const { return density.empty() ? 1.0 : density[i]; }
};

// Length measure on a union of open polyline chains (2D). A freshly built
// measure has a single chain; restricting to a ball may split it.
struct PolylineMeasure {
  std::vector<std::vector<Vec>> chains;
  bool closed = false;   // single-chain loops only
  double rate = 1.0;     // mass per unit length
  std::optional<double> graph_slope;  // bound q when built from a graph
};

// Area measure on a triangulated patch in R^3 with reference (chart)
// coordinates kept for Lipschitz constants.
struct SurfaceChart {
  std::array<Vec, 3> xyz;
  std::array<Vec, 3> ref;  // z = 0
};
struct SurfaceMeasure {
  std::vector<SurfaceChart> charts;
};

// Self-similar ratio-1/3 Cantor measure at construction level n, mass
// uniform over the level-n pieces. Interval base lies on a horizontal
// segment; square base is the planar Cantor dust.
struct CantorMeasure {
  int level = 12;
  enum class Base { Interval, Square } base = Base::Interval;
  Vec corner;            // left end of the baseline / lower-left of the square
  double extent = 1.0;   // interval length / square side
  double total = 1.0;
};

using MeasureRep =
    std::variant<AtomicMeasure, GridMeasure, PolylineMeasure, SurfaceMeasure, CantorMeasure>;

struct Measure {
  int dim = 2;                    // ambient dimension (2 or 3)
  double bounding_radius = 1.0;   // declared supp subset of B(0, bounding_radius)
  std::string label;
  MeasureRep rep;
};

// Throws std::invalid_argument when an invariant fails (masses > 0, support
// inside the declared ball, injective polylines, nondegenerate triangles).
void validate_measure(const Measure& m);

double total_mass(const Measure& m);

struct MassBound {
  double lower = 0.0, upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
  double half_gap() const { return 0.5 * (upper - lower); }
};

// Mass of the closed ball B(y, t). Exact (lower == upper) except for grid
// measures, which are certified within one cell layer.
MassBound ball_mass_bound(const Measure& m, Vec y, double t);
double ball_mass(const Measure& m, Vec y, double t);

// ---------------------------------------------------------------------------
// Modulus of continuity h_mu(t) = sup_y mu(B(y,t))
// ---------------------------------------------------------------------------

struct ModulusBound {
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  enum class Mode { Exact, Certified } mode = Mode::Exact;
};

struct ModulusOptions {
  double gap_rel_tol = defaults::kModulusGapRelTol;
  int max_evals = 40000;
};

// Exact for atomic measures (candidate centers: the atoms plus radius-t
// circle intersections in 2D, enclosing-ball support centers in 3D), for
// interval Cantor measures (sliding-window breakpoints) and for straight
// polylines; branch-and-bound certified interval otherwise.
ModulusBound modulus_of_continuity(const Measure& m, double t,
                                   const ModulusOptions& opts = {});

// ---------------------------------------------------------------------------
// Radial counting functions
// ---------------------------------------------------------------------------

// N_y(x) = hat_d int_0^x mu(B(y,t)) / t^(d-1) dt; +inf iff mu({y}) > 0.
// Closed form for atomic measures, log-substituted quadrature otherwise.
ExtendedReal radial_counting_N(const Measure& m, Vec y, double x, Dimension d);

// hat_d int_{x0}^{x1} mu(B(y,t)) / t^(d-1) dt for 0 <= x0 < x1; always finite.
double radial_counting_annulus(const Measure& m, Vec y, double x0, double x1,
                               Dimension d);

// ---------------------------------------------------------------------------
// Lipschitz curves and surfaces
// ---------------------------------------------------------------------------

// Polyline through the graph samples x + i y(x); every consecutive slope must
// satisfy |dy/dx| <= q. Throws std::invalid_argument naming the offending
// segment otherwise. Records Lip = sqrt(1+q^2) via graph_slope.
Measure curve_measure_from_graph(const std::vector<double>& xs,
                                 const std::vector<double>& ys, double q,
                                 double rate = 1.0);

struct LipschitzConstants {
  double lip = 1.0;
  double lip_inv = 1.0;
};

// Maxima of the defining ratios over vertex pairs, with the curve
// parameterized by arclength (surfaces by their reference charts).
// Throws on self-intersecting or degenerate input.
LipschitzConstants lipschitz_constants(const Measure& m);

double surface_measure_total(const SurfaceMeasure& s);

// ---------------------------------------------------------------------------
// Support helpers
// ---------------------------------------------------------------------------

Ball support_ball(const Measure& m);  // enclosing ball of the support

// Exact axis-aligned bounding box of the support.
std::pair<Vec, Vec> support_bounding_box(const Measure& m);

// Sorted left endpoints (units of 3^-level) of the level-n Cantor intervals.
const std::vector<std::int64_t>& cantor_level_lefts(int level);

// Deterministic candidate points on the support (for sup_y scans).
std::vector<Vec> support_sample_points(const Measure& m, int budget);

// Restriction to the closed ball B(0, r). Exact for atomic (atom filter) and
// polyline (circle clipping) measures; grid measures keep the cells wholly
// inside (an exact sub-measure). Unsupported for surface/Cantor reps.
Measure restrict_to_ball(const Measure& m, double r);

}  // namespace potbound
