#include <doctest.h>

#include <cmath>
#include <map>

#include "potbound/hausdorff.hpp"

using namespace potbound;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

DyadicBox box2(double lo, double size) {
  DyadicBox b;
  b.dim = 2;
  b.lo = {lo, lo, 0};
  b.size = size;
  return b;
}

CompactSet segment_set(int k = 8) {
  return rasterize(SegmentPrim{{0, 0.5, 0}, {1, 0.5, 0}}, box2(-0.125, 1.25), k);
}

CompactSet disk_set(int k = 7) {
  return rasterize(DiskPrim{{0, 0, 0}, 1.0}, box2(-1.25, 2.5), k);
}

CompactSet square_set(int k = 7) {
  return rasterize(RectPrim{{0, 0, 0}, {1, 1, 0}}, box2(-0.125, 1.25), k);
}

CompactSet quarter_circle_set(int k = 7) {
  return rasterize(ArcPrim{{0, 0, 0}, 1.0, 0.0, 0.5 * M_PI}, box2(-0.125, 1.25), k);
}

CompactSet cantor_set(int k = 10, int level = 12) {
  return rasterize(CantorPrim{level, 0.0, 0.5, 1.0}, box2(-0.125, 1.25), k);
}

CompactSet point_set(int k = 8) {
  return rasterize(SegmentPrim{{0.5, 0.5, 0}, {0.5, 0.5, 0}}, box2(0, 1), k);
}

}  // namespace

TEST_CASE("content upper: unit segment with the normalized 1-gauge") {
  const CompactSet S = segment_set();
  const ContentEstimate est = content_upper(S, power_gauge(c_p(1.0), 1.0), kInf);
  CHECK(est.upper == doctest::Approx(1.0).epsilon(0.05));
  CHECK(cover_covers(S, est.cover, kInf));
}

TEST_CASE("content upper: unit disk with the normalized 2-gauge") {
  const CompactSet S = disk_set();
  const ContentEstimate est = content_upper(S, power_gauge(c_p(2.0), 2.0), kInf);
  CHECK(est.upper == doctest::Approx(M_PI).epsilon(0.05));
  CHECK(est.upper >= M_PI * (1 - 1e-9));  // covers cannot beat the true area
}

TEST_CASE("content upper: cantor set at its similarity dimension") {
  const double p = std::log(2.0) / std::log(3.0);
  const CompactSet S = cantor_set();
  const ContentEstimate est = content_upper(S, power_gauge(c_p(p), p), kInf);
  // the level-m triadic covers all cost c_p 2^-p; the bounding ball realizes it
  CHECK(est.upper <= c_p(p) * std::pow(2.0, -p) * 1.01);
  CHECK(est.upper >= 0.9);
}

TEST_CASE("content upper: radius cap forces finer covers and is respected") {
  const CompactSet S = segment_set();
  for (double t : {kInf, 0.2, 0.02}) {
    const ContentEstimate est = content_upper(S, power_gauge(c_p(1.0), 1.0), t);
    CHECK(cover_covers(S, est.cover, t));
    for (const auto& b : est.cover) CHECK(b.r < t);
  }
}

TEST_CASE("content monotonicity in the cover radius") {
  const CompactSet S = segment_set();
  const auto [ok, rows] =
      content_monotonicity_check(S, power_gauge(c_p(1.0), 1.0), {kInf, 1.0, 0.1});
  CHECK(ok);
  CHECK(rows.front().upper <= rows.back().upper * (1 + 1e-9));

  const auto [ok2, rows2] =
      content_monotonicity_check(disk_set(6), power_gauge(c_p(2.0), 2.0), {kInf, 0.5});
  CHECK(ok2);
}

TEST_CASE("frostman lower: segment sandwich with recorded constant") {
  const CompactSet S = segment_set();
  const Gauge h = power_gauge(c_p(1.0), 1.0);
  const ContentEstimate lo = frostman_lower(S, h);
  const ContentEstimate up = content_upper(S, h, kInf);
  CHECK(lo.lower > 0.0);
  CHECK(lo.frostman_C > 0.0);
  CHECK(lo.lower <= up.upper * (1 + 1e-9));
  CHECK(lo.lower <= 1.0 + 1e-9);  // true content is 1
}

TEST_CASE("frostman lower: point shrinks to nothing") {
  const CompactSet S = point_set();
  const Gauge h = power_gauge(c_p(1.0), 1.0);
  const ContentEstimate lo = frostman_lower(S, h);
  const ContentEstimate up = content_upper(S, h, kInf);
  CHECK(lo.lower <= up.upper * (1 + 1e-9));
  CHECK(up.upper <= h(4.0 * S.cell_half_diag()));  // a couple of cells at most
}

TEST_CASE("frostman lower: cantor set positivity") {
  const double p = std::log(2.0) / std::log(3.0);
  const CompactSet S = cantor_set();
  const ContentEstimate lo = frostman_lower(S, power_gauge(c_p(p), p));
  const ContentEstimate up = content_upper(S, power_gauge(c_p(p), p), kInf);
  CHECK(lo.lower > 0.0);
  CHECK(lo.lower <= up.upper * (1 + 1e-9));
}

TEST_CASE("frostman measure: modulus dominated by C_d h on the tested grid") {
  const CompactSet S = segment_set(6);
  const Gauge h = power_gauge(c_p(1.0), 1.0);
  const ContentEstimate lo = frostman_lower(S, h);
  const double L = S.box.size;
  REQUIRE(std::holds_alternative<AtomicMeasure>(lo.frostman.rep));
  for (int i = 0; i <= 10; ++i) {
    const double t = std::ldexp(L, -7) * std::pow(std::ldexp(1.0, 7), i / 10.0);
    const ModulusBound mb = modulus_of_continuity(lo.frostman, t);
    CHECK(mb.upper <= lo.frostman_C * h(t) * (1 + 1e-9));
  }
}

TEST_CASE("frostman construction: dyadic caps hold exactly") {
  const CompactSet S = square_set(6);
  const Gauge h = power_gauge(c_p(2.0), 2.0);
  const ContentEstimate lo = frostman_lower(S, h);
  const auto& am = std::get<AtomicMeasure>(lo.frostman.rep);
  const double L = S.box.size;
  // level-j cells must not exceed h(L 2^-(j+1))
  for (int j = 0; j <= S.k; ++j) {
    const double side = std::ldexp(L, -j);
    const double cap = h(0.5 * side);
    std::map<std::pair<int, int>, double> sums;
    for (const auto& [pt, mass] : am.atoms) {
      const int ci = (int)std::floor((pt.x - S.box.lo.x) / side);
      const int cj = (int)std::floor((pt.y - S.box.lo.y) / side);
      sums[{ci, cj}] += mass;
    }
    for (const auto& [cell, v] : sums) CHECK(v <= cap * (1 + 1e-9));
  }
}

TEST_CASE("p-content: square bracketed by area and circumscribed cost") {
  const CompactSet S = square_set();
  const ContentEstimate est = p_content(S, 2.0, kInf);
  CHECK(est.upper <= c_p(2.0) * 0.5 * 1.05);  // pi/2 from the circumscribed ball
  CHECK(est.upper >= 1.0 - 1e-9);             // true value 1 = Lebesgue area
  CHECK(est.lower <= 1.0 + 1e-9);
  CHECK(est.lower > 0.0);
}

TEST_CASE("p-content: p > d nullity trend across resolutions") {
  const double p = 2.5;
  double prev = kInf;
  std::vector<double> uppers;
  for (int k : {4, 6, 8}) {
    const CompactSet S = segment_set(k);
    const double up = content_upper(S, power_gauge(c_p(p), p), kInf).upper;
    CHECK(up < prev);
    uppers.push_back(up);
    prev = up;
  }
  CHECK(uppers.back() * 10.0 <= uppers.front());
}

TEST_CASE("sandwich across the content corpus") {
  const std::vector<CompactSet> sets = {segment_set(7), disk_set(6), square_set(6),
                                        quarter_circle_set(7), cantor_set(8, 8)};
  const double pc = std::log(2.0) / std::log(3.0);
  for (const auto& S : sets)
    for (double p : {pc, 1.0, 2.0}) {
      const ContentEstimate est = p_content(S, p, kInf);
      CHECK(est.lower <= est.upper * (1 + 1e-9));
      CHECK(est.lower >= 0.0);
    }
}

TEST_CASE("theorem-3 equality at t >= r for an atomic measure with exact modulus") {
  Measure mu;
  mu.dim = 2;
  mu.rep = AtomicMeasure{{{{0.3, 0.4, 0}, 0.5}, {{0.7, 0.45, 0}, 1.0}, {{0.5, 0.6, 0}, 0.25}}};
  mu.bounding_radius = 1.1;
  const double M = total_mass(mu);
  const CompactSet S = rasterize_support(mu, box2(0, 1), 9);

  // tabulated right-step gauge from the exact atomic modulus
  const double diam = 2.0 * support_ball(mu).radius;
  std::vector<std::pair<double, double>> table;
  double prev = 0.0;
  for (int i = 0; i < 24; ++i) {
    const double t = 0.01 * std::pow(2.5 * diam / 0.01, i / 23.0);
    const double v = std::max(modulus_of_continuity(mu, t).upper, prev + 1e-15);
    table.push_back({t, v});
    prev = v;
  }
  const Gauge htab = tabulated_gauge(table, true);
  const ContentEstimate est = content_upper(S, htab, kInf);
  CHECK(est.upper == doctest::Approx(M).epsilon(0.01));
  CHECK(est.upper >= M * (1 - 1e-9));
}

TEST_CASE("empty and degenerate inputs") {
  CHECK_THROWS_AS(rasterize(SegmentPrim{{50, 50, 0}, {51, 50, 0}}, box2(0, 1), 4),
                  std::invalid_argument);
  const CompactSet S = segment_set(4);
  CHECK_THROWS_AS(content_upper(S, power_gauge(1, 1), 0.0), std::domain_error);
}
