#include <doctest.h>

#include <cmath>

#include "potbound/verify.hpp"

using namespace potbound;

namespace {

DeltaSubharmonic log_abs_z() {
  DeltaSubharmonic u;
  u.dim = 2;
  u.positive = {{{0, 0, 0}, 1.0}};
  return u;
}

Measure segment_measure(Vec a, Vec b, double rate = 1.0) {
  Measure m;
  m.dim = 2;
  PolylineMeasure pm;
  pm.chains = {{a, b}};
  pm.rate = rate;
  m.rep = std::move(pm);
  m.bounding_radius = std::max(norm(a), norm(b)) + 1e-9;
  return m;
}

double factor_product(const VerificationRecord& r) {
  ExtendedReal acc(1.0);
  for (const auto& f : r.factors) acc = xr_mul(acc, ExtendedReal(f.value));
  return acc.v;
}

}  // namespace

TEST_CASE("T1: unit-rate segment under log|z|") {
  VerificationCase c;
  c.label = "t1";
  c.theorem = TheoremId::T1;
  c.U = log_abs_z();
  c.mu = segment_measure({1, 0, 0}, {2, 0, 0});
  c.r = 2.0;
  c.R = 4.0;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 1);
  const auto& rec = out.records[0];
  CHECK(rec.ok);
  CHECK(rec.lhs == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-6));
  CHECK(rec.ratio < 1.0);
  CHECK(rec.rhs == doctest::Approx(factor_product(rec)).epsilon(1e-12));
}

TEST_CASE("T1: atomic measure is rejected by the Dini precondition") {
  VerificationCase c;
  c.label = "t1-atomic";
  c.theorem = TheoremId::T1;
  c.U = log_abs_z();
  c.mu.dim = 2;
  c.mu.rep = AtomicMeasure{{{{0.5, 0, 0}, 1.0}}};
  c.mu.bounding_radius = 1.0;
  c.r = 1.0;
  c.R = 2.0;
  const CaseOutcome out = verify_case(c);
  CHECK(out.records.empty());
  REQUIRE(out.rejected.has_value());
  CHECK(out.rejected->reason.find("Dini") != std::string::npos);
}

TEST_CASE("T1: nonpositive function gives a zero left side") {
  VerificationCase c;
  c.label = "t1-neg";
  c.theorem = TheoremId::T1;
  c.U = log_abs_z();
  c.U.constant = -std::log(100.0);  // log|z/100| <= 0 on B(4)
  c.mu = segment_measure({1, 0, 0}, {2, 0, 0});
  c.r = 2.0;
  c.R = 4.0;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].lhs == 0.0);
  CHECK(out.records[0].ok);
}

TEST_CASE("T2C: three zeros against a quarter-rate segment with h = x") {
  VerificationCase c;
  c.label = "t2";
  c.theorem = TheoremId::T2C;
  c.U.dim = 2;
  c.U.positive = {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}, {{0, -1, 0}, 1.0}};  // z(z-1)(z+i)
  c.mu = segment_measure({-0.5, 0, 0}, {0.5, 0, 0}, 0.25);
  c.r = 1.0;
  c.R = 2.0;
  c.gauge = power_gauge(1.0, 1.0, 1.0);
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].ok);
  CHECK(out.records[0].rhs == doctest::Approx(factor_product(out.records[0])).epsilon(1e-12));
}

TEST_CASE("T2C: null measure passes by the zero convention") {
  VerificationCase c;
  c.label = "t2-null";
  c.theorem = TheoremId::T2C;
  c.U = log_abs_z();
  c.mu.dim = 2;
  c.mu.rep = AtomicMeasure{};  // no atoms: M = 0
  c.mu.bounding_radius = 1.0;
  c.r = 1.0;
  c.R = 2.0;
  c.gauge = power_gauge(1.0, 1.0, 1.0);
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].lhs == 0.0);
  CHECK(out.records[0].rhs == 0.0);
  CHECK(out.records[0].ok);
  CHECK(out.records[0].ratio == 0.0);
}

TEST_CASE("T2C: domination failure names the radius") {
  VerificationCase c;
  c.label = "t2-dom";
  c.theorem = TheoremId::T2C;
  c.U = log_abs_z();
  c.mu = segment_measure({-0.5, 0, 0}, {0.5, 0, 0});  // full rate: h_mu(t) = 2t
  c.r = 1.0;
  c.R = 2.0;
  c.gauge = power_gauge(1.0, 1.0, 1.0);  // h = x < 2t: fails
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.rejected.has_value());
  CHECK(out.rejected->reason.find("domination") != std::string::npos);
  CHECK(out.rejected->reason.find("t = ") != std::string::npos);
}

TEST_CASE("T2C: inadmissible gauge is rejected") {
  VerificationCase c;
  c.label = "t2-inadmissible";
  c.theorem = TheoremId::T2D;
  c.U.dim = 3;
  c.U.positive = {{{0, 0, 0}, 1.0}};
  Measure m;
  m.dim = 3;
  SurfaceMeasure sm;
  sm.charts.push_back({{Vec{0, 0, 0}, Vec{0.5, 0, 0}, Vec{0, 0.5, 0}},
                       {Vec{0, 0, 0}, Vec{0.5, 0, 0}, Vec{0, 0.5, 0}}});
  m.rep = std::move(sm);
  m.bounding_radius = 1.0;
  c.mu = m;
  c.r = 1.0;
  c.R = 2.0;
  c.gauge = power_gauge(1.0, 1.0, 1.0);  // p = 1 <= d-2 for d = 3
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.rejected.has_value());
  CHECK(out.rejected->reason.find("inadmissible") != std::string::npos);
}

TEST_CASE("T3ii: substitution raises the right side (Lemma 2 direction)") {
  VerificationCase c;
  c.label = "t3";
  c.theorem = TheoremId::T3ii;
  c.U.dim = 2;
  c.U.positive = {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}};
  c.mu = segment_measure({-0.5, 0, 0}, {0.5, 0, 0}, 0.25);
  c.r = 1.0;
  c.R = 2.0;
  c.gauge = power_gauge(1.0, 1.0, 1.0);
  c.content_t = 1.5;
  c.resolution = 8;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 2);
  const auto& orig = out.records[0];
  const auto& sub = out.records[1];
  CHECK(orig.ok);
  CHECK(sub.ok);
  CHECK(sub.rhs >= orig.rhs * (1.0 - 1e-3));
  CHECK(sub.label.find("/content") != std::string::npos);
  // the substituted mass factor dominates the true total mass
  double msub = 0.0, morig = 0.0;
  for (const auto& f : sub.factors)
    if (f.name == "mass") msub = f.value;
  for (const auto& f : orig.factors)
    if (f.name == "mass") morig = f.value;
  CHECK(msub >= morig * (1.0 - 1e-9));
}

TEST_CASE("T3i: content substitution in the theorem-1 bracket") {
  VerificationCase c;
  c.label = "t3i";
  c.theorem = TheoremId::T3i;
  c.U = log_abs_z();
  c.mu = segment_measure({1, 0, 0}, {2, 0, 0});
  c.r = 2.0;
  c.R = 4.0;
  c.content_t = 3.0;
  c.resolution = 8;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 2);
  CHECK(out.records[0].ok);
  CHECK(out.records[1].ok);
  CHECK(out.records[1].rhs >= out.records[0].rhs * (1.0 - 1e-3));
}

TEST_CASE("T5C: segment curve at p = 1 with the curve constant") {
  VerificationCase c;
  c.label = "t5";
  c.theorem = TheoremId::T5C;
  c.U.dim = 2;
  c.U.positive = {{{2, 0, 0}, 1.0}};  // log|z-2|
  c.mu = segment_measure({0, 0, 0}, {1, 0, 0});
  c.r = 1.0;
  c.R = 3.0;
  c.b = 2.0 * std::sqrt(2.0);
  c.p = 1.0;
  c.content_t = std::numeric_limits<double>::infinity();
  c.resolution = 8;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 1);
  CHECK(out.records[0].ok);
  CHECK(out.records[0].rhs == doctest::Approx(factor_product(out.records[0])).epsilon(1e-12));
}

TEST_CASE("T5: p out of range is rejected") {
  VerificationCase c;
  c.label = "t5-bad-p";
  c.theorem = TheoremId::T5C;
  c.U = log_abs_z();
  c.mu = segment_measure({0, 0, 0}, {1, 0, 0});
  c.r = 1.0;
  c.R = 2.0;
  c.b = 4.0;
  c.p = 2.5;  // > d = 2
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.rejected.has_value());
  CHECK(out.rejected->reason.find("p in (d-2, d]") != std::string::npos);
}

TEST_CASE("COR-CURVE: rejects a non-bilipschitz (self-intersecting) curve") {
  VerificationCase c;
  c.label = "curve-bad";
  c.theorem = TheoremId::CorCurve;
  c.U = log_abs_z();
  c.mu.dim = 2;
  PolylineMeasure pm;
  pm.chains = {{{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}};
  c.mu.rep = std::move(pm);
  c.mu.bounding_radius = 2.0;
  c.r = 2.0;
  c.R = 4.0;
  const CaseOutcome out = verify_case(c);
  CHECK(out.rejected.has_value());
}

TEST_CASE("COR-DISKBALL: sweep gap constraint enforced") {
  VerificationCase c;
  c.label = "db-bad";
  c.theorem = TheoremId::CorDiskBall;
  c.U = log_abs_z();
  c.mu = segment_measure({-0.5, 0, 0}, {0.5, 0, 0});
  SweepSpec sw;
  sw.radii = {0.5};
  sw.kind = SweepSpec::Kind::Gap;
  sw.c = 1.5;  // s(r) = 1.5 (1-r) >= 1-r: violates the domain constraint
  c.sweep = sw;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.rejected.has_value());
  CHECK(out.rejected->reason.find("s(r)") != std::string::npos);
}

TEST_CASE("COR-DISKBALL: lengths inside the unit disk pass per radius") {
  VerificationCase c;
  c.label = "db";
  c.theorem = TheoremId::CorDiskBall;
  c.U.dim = 2;
  c.U.positive = {{{0, 0, 0}, 1.0}, {{0.3, 0.2, 0}, 1.0}};
  c.mu = segment_measure({-0.5, 0, 0}, {0.5, 0, 0});
  SweepSpec sw;
  sw.radii = {0.5, 0.7, 0.9};
  sw.kind = SweepSpec::Kind::Gap;
  sw.c = 0.5;
  c.sweep = sw;
  const CaseOutcome out = verify_case(c);
  REQUIRE(out.records.size() == 3);
  for (const auto& rec : out.records) {
    CHECK(rec.ok);
    CHECK(!rec.caveats.empty());
    CHECK(std::find(rec.caveats.begin(), rec.caveats.end(), "supN-grid-lower-bound") !=
          rec.caveats.end());
  }
}

TEST_CASE("run_corpus: summary, determinism across jobs, corruption drill") {
  VerificationCase curve;
  curve.label = "curve";
  curve.theorem = TheoremId::CorCurve;
  curve.U.dim = 2;
  curve.U.positive = {{{2, 0, 0}, 1.0}};
  curve.mu = segment_measure({0, 0, 0}, {1, 0, 0});
  curve.r = 1.0;
  curve.R = 3.0;

  VerificationCase bad = curve;
  bad.label = "bad";
  bad.theorem = TheoremId::T1;
  bad.mu.rep = AtomicMeasure{{{{0.5, 0, 0}, 1.0}}};
  bad.mu.bounding_radius = 1.0;

  const CorpusReport rep = run_corpus({curve, bad});
  CHECK(rep.records.size() == 1);
  CHECK(rep.rejected.size() == 1);
  CHECK(rep.n_ok == 1);
  CHECK(rep.n_violation == 0);

  RunOptions two;
  two.jobs = 2;
  const CorpusReport rep2 = run_corpus({curve, bad}, two);
  REQUIRE(rep2.records.size() == 1);
  CHECK(rep2.records[0].lhs == rep.records[0].lhs);
  CHECK(rep2.records[0].rhs == rep.records[0].rhs);

  RunOptions corrupt;
  corrupt.corrupt_rhs_scale = 1e-9;
  const CorpusReport rep3 = run_corpus({curve}, corrupt);
  CHECK(rep3.n_violation == 1);

  CHECK(run_corpus({}).records.empty());
}

TEST_CASE("lemma-2 monotone maps on corpus gauges") {
  const std::vector<Gauge> d2_gauges = {power_gauge(1, 1, 1.0), power_gauge(2, 0.5, 1.0),
                                        power_gauge(M_PI, 2, 1.0),
                                        power_log_gauge(1.0, 1.0, -0.5, 1.0)};
  for (const auto& h : d2_gauges) {
    double worst = 0.0;
    CHECK(lemma2_monotone_d2(h, 1.0, std::exp(1.0) * 1.0, 1000, &worst));
    CHECK(worst <= 1e-12);
  }
  const std::vector<Gauge> d3_gauges = {power_gauge(3, 2, 1.0), power_gauge(1, 1.5, 1.0),
                                        power_gauge(c_p(3.0), 3.0, 1.0)};
  for (const auto& h : d3_gauges) {
    double worst = 0.0;
    CHECK(lemma2_monotone_d3(h, 1.0, 1000, &worst));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("intrinsic gauges and the dini upper bound") {
  const Measure seg = segment_measure({0, 0, 0}, {1, 0, 0});
  const auto ig = intrinsic_gauge(seg);
  REQUIRE(ig.has_value());
  CHECK(ig->p == 1.0);
  CHECK(ig->b == doctest::Approx(2.0 * std::sqrt(2.0)));
  const auto dini = dini_upper_bound(seg, 1.0, Dimension(2));
  REQUIRE(dini.has_value());
  // exact integral of min(2t,1)/t over (0,1] is 1 + ln 2
  CHECK(*dini >= 1.0 + std::log(2.0) - 1e-9);
  CHECK(*dini <= (1.0 + std::log(2.0)) * 1.35);

  Measure atom;
  atom.dim = 2;
  atom.rep = AtomicMeasure{{{{0, 0, 0}, 1.0}}};
  atom.bounding_radius = 0.1;
  CHECK_FALSE(intrinsic_gauge(atom).has_value());
  CHECK_FALSE(dini_upper_bound(atom, 1.0, Dimension(2)).has_value());
}
