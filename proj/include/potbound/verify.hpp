#pragma once

#include <optional>
#include <string>
#include <vector>

#include "potbound/gauge.hpp"
#include "potbound/hausdorff.hpp"
#include "potbound/measure.hpp"
#include "potbound/subharmonic.hpp"

namespace potbound {

enum class TheoremId {
  T1, T2C, T2D, T3i, T3ii, T5C, T5D,
  CorLeb, CorLebSweep, CorCurve, CorCurveSweep, CorSurf, CorDiskBall
};

std::string theorem_name(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

// Sweep radius-gap function s(r): either s(r) = c * r (whole-space sweeps)
// or s(r) = c * (1 - r) (unit-ball sweeps, 0 < c < 1).
struct SweepSpec {
  std::vector<double> radii;
  enum class Kind { Proportional, Gap } kind = Kind::Proportional;
  double c = 1.0;
  double s_of(double r) const { return kind == Kind::Proportional ? c * r : c * (1.0 - r); }
};

struct VerificationCase {
  std::string label;
  TheoremId theorem = TheoremId::T1;
  DeltaSubharmonic U;
  Measure mu;
  double r = 1.0, R = 2.0;
  std::optional<Gauge> gauge;          // T2/T3ii
  double b = 0.0, p = 0.0;             // T5 modulus bound h_mu <= b x^p
  double content_t = std::numeric_limits<double>::infinity();
  std::optional<SweepSpec> sweep;
  int resolution = defaults::kDyadicResolution;
  int sup_candidates = 96;
};

struct Factor {
  std::string name;
  double value;
};

struct VerificationRecord {
  std::string label;
  TheoremId theorem = TheoremId::T1;
  double lhs = 0.0, lhs_err = 0.0;
  double rhs = 0.0;
  std::vector<Factor> factors;  // multiply to rhs (0 * inf = 0 convention)
  double ratio = 0.0;
  bool ok = false;
  std::vector<std::string> caveats;
  double tol_rel = defaults::kPassRelTol;
  double sweep_r = std::numeric_limits<double>::quiet_NaN();
  double ms = 0.0;  // wall time; excluded from canonical report bytes
};

struct RejectedCase {
  std::string label;
  std::string theorem;
  std::string reason;
};

struct CaseOutcome {
  std::vector<VerificationRecord> records;
  std::optional<RejectedCase> rejected;
};

// Evaluates one case; precondition failures land in `rejected` (never both).
CaseOutcome verify_case(const VerificationCase& c);

struct RunOptions {
  int jobs = 1;
  double corrupt_rhs_scale = 1.0;  // self-test hook; scales one rhs factor
  unsigned long long seed = defaults::kDefaultSeed;
};

struct CorpusReport {
  std::vector<VerificationRecord> records;
  std::vector<RejectedCase> rejected;
  int n_ok = 0;
  int n_violation = 0;
  unsigned long long seed = defaults::kDefaultSeed;
};

CorpusReport run_corpus(const std::vector<VerificationCase>& cases,
                        const RunOptions& opts = {});

// ---------------------------------------------------------------------------
// Shared building blocks (exposed for tests and the acceptance suite)
// ---------------------------------------------------------------------------

// Certified modulus uppers on a log grid of (0, r]; values clipped at the
// total mass and at the representation's intrinsic power bound.
struct ModulusGridPoint {
  double t;
  double upper;
};
std::vector<ModulusGridPoint> modulus_upper_grid(const Measure& mu, double r, int n);

// Intrinsic near-zero bound h_mu(t) <= b t^p from the representation
// (polyline 2*sqrt(2)*Lip*LipInv*rate*t, grid c_d*dens*t^d, Cantor 4*2^p t^p,
// surface 3 d^d (Lip LipInv)^(d-1) t^(d-1)); nullopt for atomic measures.
struct IntrinsicGauge {
  double b;
  double p;
};
std::optional<IntrinsicGauge> intrinsic_gauge(const Measure& mu);

// Conservative upper bound of int_0^r h_mu(t)/t^(d-1) dt; nullopt (Dini
// failure) when no intrinsic power bound with p > d-2 exists.
std::optional<double> dini_upper_bound(const Measure& mu, double r, Dimension d);

// Lemma-2 monotone maps on [0, h(r)], checked on a uniform grid.
bool lemma2_monotone_d2(const Gauge& h, double r, double B, int npts, double* worst = nullptr);
bool lemma2_monotone_d3(const Gauge& h, double r, int npts, double* worst = nullptr);

}  // namespace potbound
