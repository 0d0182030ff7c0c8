#include "potbound/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace potbound {

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2C: return "T2C";
    case TheoremId::T2D: return "T2D";
    case TheoremId::T3i: return "T3i";
    case TheoremId::T3ii: return "T3ii";
    case TheoremId::T5C: return "T5C";
    case TheoremId::T5D: return "T5D";
    case TheoremId::CorLeb: return "COR-LEB";
    case TheoremId::CorLebSweep: return "COR-LEB-SWEEP";
    case TheoremId::CorCurve: return "COR-CURVE";
    case TheoremId::CorCurveSweep: return "COR-CURVE-SWEEP";
    case TheoremId::CorSurf: return "COR-SURF";
    case TheoremId::CorDiskBall: return "COR-DISKBALL";
  }
  return "?";
}

TheoremId theorem_from_string(const std::string& s) {
  static const std::pair<const char*, TheoremId> table[] = {
      {"T1", TheoremId::T1}, {"T2C", TheoremId::T2C}, {"T2D", TheoremId::T2D},
      {"T3i", TheoremId::T3i}, {"T3ii", TheoremId::T3ii}, {"T5C", TheoremId::T5C},
      {"T5D", TheoremId::T5D}, {"COR-LEB", TheoremId::CorLeb},
      {"COR-LEB-SWEEP", TheoremId::CorLebSweep}, {"COR-CURVE", TheoremId::CorCurve},
      {"COR-CURVE-SWEEP", TheoremId::CorCurveSweep}, {"COR-SURF", TheoremId::CorSurf},
      {"COR-DISKBALL", TheoremId::CorDiskBall}};
  for (const auto& [name, id] : table)
    if (s == name) return id;
  throw std::invalid_argument("unknown theorem id: " + s);
}

namespace {

struct Reject {
  std::string reason;
};

double factor_product(const std::vector<Factor>& fs) {
  ExtendedReal acc(1.0);
  for (const auto& f : fs) acc = xr_mul(acc, ExtendedReal(f.value));
  return acc.v;
}

VerificationRecord make_record(const VerificationCase& c, const std::string& label,
                               double lhs, double lhs_err, std::vector<Factor> factors,
                               std::vector<std::string> caveats,
                               double sweep_r = std::numeric_limits<double>::quiet_NaN()) {
  VerificationRecord rec;
  rec.label = label;
  rec.theorem = c.theorem;
  rec.lhs = lhs;
  rec.lhs_err = lhs_err;
  rec.factors = std::move(factors);
  rec.rhs = factor_product(rec.factors);
  rec.caveats = std::move(caveats);
  rec.sweep_r = sweep_r;
  const double lhs_up = lhs + lhs_err;
  rec.ok = lhs_up <= rec.rhs * (1.0 + rec.tol_rel) + defaults::kPassAbsTol;
  if (lhs == 0.0) {
    rec.ratio = 0.0;
  } else if (rec.rhs > 0.0) {
    rec.ratio = lhs / rec.rhs;
  } else {
    rec.ratio = std::numeric_limits<double>::infinity();
  }
  return rec;
}

void require_support_in_ball(const Measure& mu, double r, const char* what) {
  if (total_mass(mu) == 0.0) return;
  const Ball b = support_ball(mu);
  if (norm(b.center) + b.radius > r * (1.0 + 1e-9) + 1e-12)
    throw Reject{std::string(what) + ": support leaves B(0," + std::to_string(r) + ")"};
}

double characteristic_or_reject(const DeltaSubharmonic& U, double r, double R, long* nodes) {
  try {
    const CharacteristicValue t = nevanlinna_T(U, r, R);
    if (nodes) *nodes = t.nodes;
    return t.value;
  } catch (const std::domain_error& e) {
    throw Reject{std::string("characteristic: ") + e.what()};
  }
}

IntegralResult lhs_or_reject(const DeltaSubharmonic& U, const Measure& mu) {
  const IntegralResult res = integrate_plus_against(U, mu);
  if (res.infinite) throw Reject{"lhs integral is +infinity (atom meets a negative charge)"};
  return res;
}

constexpr int kModulusGridPoints = 22;

}  // namespace

std::optional<IntrinsicGauge> intrinsic_gauge(const Measure& mu) {
  if (std::holds_alternative<AtomicMeasure>(mu.rep)) return std::nullopt;
  if (const auto* pm = std::get_if<PolylineMeasure>(&mu.rep)) {
    double lip = 1.0, lip_inv = 1.0;
    if (pm->graph_slope) {
      lip = std::sqrt(1.0 + *pm->graph_slope * *pm->graph_slope);
      lip_inv = 1.0;
    } else if (pm->chains.size() == 1) {
      const LipschitzConstants lc = lipschitz_constants(mu);
      lip = lc.lip;
      lip_inv = lc.lip_inv;
    } else {
      return std::nullopt;  // clipped fragments carry no chart
    }
    return IntrinsicGauge{2.0 * std::sqrt(2.0) * lip * lip_inv * pm->rate, 1.0};
  }
  if (const auto* gm = std::get_if<GridMeasure>(&mu.rep)) {
    double dmax = 1.0;
    for (double d : gm->density) dmax = std::max(dmax, d);
    return IntrinsicGauge{dmax * c_p((double)mu.dim), (double)mu.dim};
  }
  if (const auto* sm = std::get_if<SurfaceMeasure>(&mu.rep)) {
    (void)sm;
    const LipschitzConstants lc = lipschitz_constants(mu);
    const double dd = (double)mu.dim;
    return IntrinsicGauge{3.0 * std::pow(dd, dd) * std::pow(lc.lip * lc.lip_inv, dd - 1.0),
                          dd - 1.0};
  }
  const auto* cm = std::get_if<CantorMeasure>(&mu.rep);
  const double p = std::log(2.0) / std::log(3.0);
  if (cm->base == CantorMeasure::Base::Square) {
    // dust: mu(B) <= 16 (2t/extent)^(2p) total
    return IntrinsicGauge{16.0 * std::pow(2.0 / cm->extent, 2.0 * p) * cm->total, 2.0 * p};
  }
  return IntrinsicGauge{4.0 * std::pow(2.0 / cm->extent, p) * cm->total, p};
}

std::vector<ModulusGridPoint> modulus_upper_grid(const Measure& mu, double r, int n) {
  std::vector<ModulusGridPoint> out;
  const double M = total_mass(mu);
  const auto ig = intrinsic_gauge(mu);
  const double t0 = r * 1e-4;
  for (int i = 0; i < n; ++i) {
    const double t = t0 * std::pow(r / t0, (double)i / (double)(n - 1));
    const ModulusBound mb = modulus_of_continuity(mu, t);
    double up = std::min(mb.upper, M);
    if (ig) up = std::min(up, ig->b * std::pow(t, ig->p));
    out.push_back({t, up});
  }
  return out;
}

std::optional<double> dini_upper_bound(const Measure& mu, double r, Dimension d) {
  const auto ig = intrinsic_gauge(mu);
  if (!ig || !(ig->p > (double)(d.value - 2))) return std::nullopt;
  const auto grid = modulus_upper_grid(mu, r, kModulusGridPoints);
  const double e = ig->p - (double)d.value + 2.0;
  double acc = ig->b * std::pow(grid.front().t, e) / e;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i].t, b = grid[i + 1].t;
    const double piece =
        d.value == 2 ? std::log(b / a)
                     : (std::pow(a, 2.0 - (double)d.value) - std::pow(b, 2.0 - (double)d.value)) /
                           ((double)d.value - 2.0);
    acc += grid[i + 1].upper * piece;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Per-theorem verifiers
// ---------------------------------------------------------------------------

namespace {

VerificationRecord do_T1(const VerificationCase& c) {
  const Dimension d(c.mu.dim);
  require_support_in_ball(c.mu, c.r, "T1");
  const auto dini = dini_upper_bound(c.mu, c.r, d);
  if (!dini) throw Reject{"Dini condition fails for the modulus of continuity"};
  const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
  const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
  const double M = total_mass(c.mu);
  const double bracket =
      M * std::max(1.0, std::pow(c.r, 2.0 - (double)d.value)) + (double)hat_d(d) * *dini;
  std::vector<Factor> fs = {{"A_d", constant_A(d, c.r, c.R)},
                            {"T_U", T},
                            {"mass_dini_bracket", bracket}};
  return make_record(c, c.label, lhs.value, lhs.err, std::move(fs), {"dini-upper-bound"});
}

struct T2Parts {
  double M;
  double hinv;
  double s_h;
};

T2Parts t2_preconditions(const VerificationCase& c, const Gauge& h) {
  const Dimension d(c.mu.dim);
  require_support_in_ball(c.mu, c.r, "T2");
  const SlopeResult slope = slope_s(h, d);
  if (!slope.admissible())
    throw Reject{"gauge inadmissible: inf t h'/h - (d-2) <= 0"};
  const double M = total_mass(c.mu);
  if (M > 0.0) {
    for (const auto& gp : modulus_upper_grid(c.mu, c.r, kModulusGridPoints)) {
      if (gp.upper > h(gp.t) * (1.0 + 1e-9) + 1e-12)
        throw Reject{"gauge domination h_mu <= h fails at t = " + std::to_string(gp.t)};
    }
  }
  double hinv = 0.0;
  if (M > 0.0) {
    try {
      hinv = gauge_inverse(h, std::min(M, h.max_value()));
    } catch (const std::out_of_range&) {
      throw Reject{"h^{-1}(M) undefined: M exceeds h(r)"};
    }
  }
  return {M, hinv, slope.s.v};
}

std::vector<Factor> t2_rhs_factors(const VerificationCase& c, const T2Parts& parts,
                                   double T, double mass_value, double hinv_value) {
  const Dimension d(c.mu.dim);
  std::vector<Factor> fs;
  if (d.value == 2) {
    fs.push_back({"prefactor", 5.0 * (c.R + c.r) / (c.R - c.r)});
    fs.push_back({"T_U", T});
    fs.push_back({"mass", mass_value});
    const double log_arg = std::exp(1.0 + parts.s_h) * c.r / hinv_value;
    fs.push_back({"log_factor", hinv_value > 0.0 ? std::log(log_arg)
                                                 : std::numeric_limits<double>::infinity()});
  } else {
    fs.push_back({"A_d", constant_A(d, c.r, c.R)});
    fs.push_back({"T_U", T});
    fs.push_back({"mass", mass_value});
    const double dd = (double)d.value;
    const double bracket =
        hinv_value > 0.0
            ? 1.0 + (1.0 + (dd - 2.0) * parts.s_h) / std::pow(hinv_value, dd - 2.0)
            : std::numeric_limits<double>::infinity();
    fs.push_back({"bracket", bracket});
  }
  return fs;
}

VerificationRecord do_T2(const VerificationCase& c) {
  if (!c.gauge) throw Reject{"T2 case without a gauge"};
  const Dimension d(c.mu.dim);
  if ((c.theorem == TheoremId::T2C && d.value != 2) ||
      (c.theorem == TheoremId::T2D && d.value <= 2))
    throw Reject{"theorem branch does not match the ambient dimension"};
  const T2Parts parts = t2_preconditions(c, *c.gauge);
  const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
  const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
  auto fs = t2_rhs_factors(c, parts, T, parts.M, parts.hinv);
  return make_record(c, c.label, lhs.value, lhs.err, std::move(fs), {});
}

CompactSet support_raster(const VerificationCase& c) {
  DyadicBox box = snug_box(c.mu);
  int k = c.resolution;
  if (c.mu.dim == 3) k = std::min(k, 7);  // 3D rasters grow fast
  return rasterize_support(c.mu, box, k);
}

std::vector<VerificationRecord> do_T3(const VerificationCase& c) {
  const Dimension d(c.mu.dim);
  if (!(c.content_t >= c.r))
    throw Reject{"content radius t must be >= r for the substitution case"};
  std::vector<VerificationRecord> out;
  const CompactSet S = support_raster(c);

  if (c.theorem == TheoremId::T3i) {
    // parent: T1
    VerificationCase parent = c;
    parent.theorem = TheoremId::T1;
    VerificationRecord orig = do_T1(parent);
    orig.label = c.label + "/M";
    orig.theorem = TheoremId::T3i;

    // content gauge: right-step table of certified modulus uppers
    const double diam = 2.0 * support_ball(c.mu).radius;
    const double t0 = 0.5 * S.cell_side();
    const double M = total_mass(c.mu);
    std::vector<std::pair<double, double>> table;
    double prev = 0.0;
    for (int i = 0; i < 18; ++i) {
      const double t = t0 * std::pow(2.2 * diam / t0, (double)i / 17.0);
      const double up = std::min(modulus_of_continuity(c.mu, t).upper, M);
      const double v = std::max(up, prev + 1e-15);  // keep the table monotone
      table.push_back({t, v});
      prev = v;
    }
    const Gauge htab = tabulated_gauge(table, /*right_step=*/true);
    const double mhat = content_upper(S, htab, c.content_t).upper;

    const auto dini = dini_upper_bound(c.mu, c.r, d);
    const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
    const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
    const double bracket =
        mhat * std::max(1.0, std::pow(c.r, 2.0 - (double)d.value)) + (double)hat_d(d) * *dini;
    std::vector<Factor> fs = {{"A_d", constant_A(d, c.r, c.R)},
                              {"T_U", T},
                              {"content_dini_bracket", bracket}};
    VerificationRecord sub = make_record(c, c.label + "/content", lhs.value, lhs.err,
                                         std::move(fs),
                                         {"content-upper-substituted", "dini-upper-bound"});
    if (M > mhat * (1.0 + 0.01)) {
      sub.ok = false;
      sub.caveats.push_back("content-upper-below-total-mass");
    }
    if (sub.rhs < orig.rhs * (1.0 - defaults::kPassRelTol)) {
      sub.ok = false;
      sub.caveats.push_back("substitution-monotonicity-violated");
    }
    out.push_back(std::move(orig));
    out.push_back(std::move(sub));
    return out;
  }

  // T3ii: parent T2
  if (!c.gauge) throw Reject{"T3ii case without a gauge"};
  VerificationCase parent = c;
  parent.theorem = c.mu.dim == 2 ? TheoremId::T2C : TheoremId::T2D;
  VerificationRecord orig = do_T2(parent);
  orig.label = c.label + "/M";
  orig.theorem = TheoremId::T3ii;

  const T2Parts parts = t2_preconditions(c, *c.gauge);
  double mhat = content_upper(S, *c.gauge, c.content_t).upper;
  std::vector<std::string> caveats = {"content-upper-substituted"};
  const double hr = c.gauge->max_value();
  if (mhat > hr) {
    mhat = hr;  // Lemma-2 maps live on [0, h(r)]; the cap keeps mhat >= M
    caveats.push_back("content-capped-at-h(r)");
  }
  const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
  const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
  double hinv_sub = parts.hinv;
  try {
    hinv_sub = gauge_inverse(*c.gauge, mhat);
  } catch (const std::out_of_range&) {
    throw Reject{"h^{-1}(content) undefined"};
  }
  auto fs = t2_rhs_factors(c, parts, T, mhat, hinv_sub);
  VerificationRecord sub =
      make_record(c, c.label + "/content", lhs.value, lhs.err, std::move(fs), caveats);
  if (parts.M > mhat * (1.0 + 0.01)) {
    sub.ok = false;
    sub.caveats.push_back("content-upper-below-total-mass");
  }
  if (sub.rhs < orig.rhs * (1.0 - defaults::kPassRelTol)) {
    sub.ok = false;
    sub.caveats.push_back("substitution-monotonicity-violated");
  }
  out.push_back(std::move(orig));
  out.push_back(std::move(sub));
  return out;
}

VerificationRecord do_T5(const VerificationCase& c) {
  const Dimension d(c.mu.dim);
  if ((c.theorem == TheoremId::T5C && d.value != 2) ||
      (c.theorem == TheoremId::T5D && d.value <= 2))
    throw Reject{"theorem branch does not match the ambient dimension"};
  const double dd = (double)d.value;
  if (!(c.p > dd - 2.0 && c.p <= dd)) throw Reject{"T5 requires p in (d-2, d]"};
  if (!(c.b > 0.0)) throw Reject{"T5 requires b > 0"};
  if (!(c.content_t >= c.r)) throw Reject{"T5 requires cover radius t >= r"};
  require_support_in_ball(c.mu, c.r, "T5");

  const Gauge hb = power_gauge(c.b, c.p);
  for (const auto& gp : modulus_upper_grid(c.mu, c.r, kModulusGridPoints))
    if (gp.upper > hb(gp.t) * (1.0 + 1e-9) + 1e-12)
      throw Reject{"modulus bound h_mu <= b x^p fails at t = " + std::to_string(gp.t)};

  const CompactSet S = support_raster(c);
  const double mhat = content_upper(S, power_gauge(c_p(c.p), c.p), c.content_t).upper;

  const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
  const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
  std::vector<Factor> fs;
  if (d.value == 2) {
    fs = {{"prefactor", (c.b / c.p) * (c.R + c.r) / (c.R - c.r)},
          {"T_U", T},
          {"p_content", mhat},
          {"log_factor",
           std::log(M_PI * std::exp(c.p + 1.0) * std::pow(c.r, c.p) / mhat)}};
  } else {
    const double bracket =
        1.0 + 1.0 / ((c.p - (dd - 2.0)) * std::pow(mhat, (dd - 2.0) / c.p));
    fs = {{"prefactor", c.b * std::pow(dd, dd)},
          {"A_d", constant_A(d, c.r, c.R)},
          {"T_U", T},
          {"p_content", mhat},
          {"bracket", bracket}};
  }
  return make_record(c, c.label, lhs.value, lhs.err, std::move(fs),
                     {"content-upper-substituted"});
}

VerificationRecord leb_record(const VerificationCase& c, const Measure& part, double r,
                              double R, const std::string& label, double sweep_r,
                              double sweep_s) {
  const Dimension d(part.dim);
  const double dd = (double)d.value;
  const double lambda = total_mass(part);
  const IntegralResult lhs = lambda > 0.0 ? lhs_or_reject(c.U, part) : IntegralResult{};
  const double T = characteristic_or_reject(c.U, r, R, nullptr);
  const bool sweep = !std::isnan(sweep_r);
  std::vector<Factor> fs;
  if (d.value == 2) {
    const double pref = sweep ? 8.0 * (1.0 + 2.0 * r / sweep_s)
                              : 8.0 * (c.R + c.r) / (c.R - c.r);
    fs = {{"prefactor", pref},
          {"T_U", T},
          {"area", lambda},
          {"log_factor", lambda > 0.0
                             ? std::log(M_PI * std::exp(3.0) * r * r / lambda)
                             : std::numeric_limits<double>::infinity()}};
  } else {
    const double pref =
        sweep ? 30.0 * std::pow(dd, dd + 1.0) * std::pow(1.0 + 2.0 * r / sweep_s, dd - 1.0) *
                    std::pow(1.0 + sweep_s, dd - 2.0)
              : 6.0 * std::pow(dd, dd) * constant_A(d, r, R);
    fs = {{"prefactor", pref},
          {"T_U", T},
          {"bracket", lambda + std::pow(lambda, 2.0 / dd)}};
  }
  return make_record(c, label, lhs.value, lhs.err, std::move(fs), {}, sweep_r);
}

std::vector<VerificationRecord> do_COR_LEB(const VerificationCase& c) {
  if (!std::holds_alternative<GridMeasure>(c.mu.rep))
    throw Reject{"COR-LEB requires a grid Lebesgue measure"};
  if (c.theorem == TheoremId::CorLeb) {
    require_support_in_ball(c.mu, c.r, "COR-LEB");
    return {leb_record(c, c.mu, c.r, c.R, c.label,
                       std::numeric_limits<double>::quiet_NaN(), 0.0)};
  }
  if (!c.sweep) throw Reject{"sweep case without sweep radii"};
  std::vector<VerificationRecord> out;
  for (double r : c.sweep->radii) {
    const double s = c.sweep->s_of(r);
    if (!(s > 0.0)) throw Reject{"sweep: s(r) must be > 0"};
    const Measure part = restrict_to_ball(c.mu, r);
    out.push_back(leb_record(c, part, r, r + s,
                             c.label + "@r=" + std::to_string(r), r, s));
  }
  return out;
}

std::vector<VerificationRecord> do_COR_CURVE(const VerificationCase& c) {
  const auto* pm = std::get_if<PolylineMeasure>(&c.mu.rep);
  if (!pm) throw Reject{"COR-CURVE requires a polyline measure"};
  if (std::abs(pm->rate - 1.0) > 1e-12)
    throw Reject{"COR-CURVE applies to the plain length measure (rate 1)"};

  if (c.theorem == TheoremId::CorCurve) {
    require_support_in_ball(c.mu, c.r, "COR-CURVE");
    LipschitzConstants lc;
    try {
      lc = lipschitz_constants(c.mu);
    } catch (const std::invalid_argument& e) {
      throw Reject{std::string("curve rejected: ") + e.what()};
    }
    const double sigma = total_mass(c.mu);
    const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
    const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
    std::vector<Factor> fs = {
        {"prefactor", 15.0 * lc.lip * lc.lip_inv * (c.R + c.r) / (c.R - c.r)},
        {"T_U", T},
        {"length", sigma},
        {"log_factor", std::log(M_PI * std::exp(2.0) * c.r / sigma)}};
    return {make_record(c, c.label, lhs.value, lhs.err, std::move(fs), {})};
  }

  // sweep form: bounded-slope graph curves
  if (!pm->graph_slope) throw Reject{"COR-CURVE-SWEEP requires a bounded-slope graph curve"};
  if (!c.sweep) throw Reject{"sweep case without sweep radii"};
  const double q = *pm->graph_slope;
  std::vector<VerificationRecord> out;
  for (double r : c.sweep->radii) {
    const double s = c.sweep->s_of(r);
    if (!(s > 0.0)) throw Reject{"sweep: s(r) must be > 0"};
    const Measure part = restrict_to_ball(c.mu, r);
    const double sigma = total_mass(part);
    const IntegralResult lhs = sigma > 0.0 ? lhs_or_reject(c.U, part) : IntegralResult{};
    const double T = characteristic_or_reject(c.U, r, r + s, nullptr);
    std::vector<Factor> fs = {
        {"prefactor", 15.0 * std::sqrt(1.0 + q * q) * (1.0 + 2.0 * r / s)},
        {"T_U", T},
        {"length", sigma},
        {"log_factor", sigma > 0.0 ? std::log(M_PI * std::exp(2.0) * r / sigma)
                                   : std::numeric_limits<double>::infinity()}};
    out.push_back(make_record(c, c.label + "@r=" + std::to_string(r), lhs.value, lhs.err,
                              std::move(fs), {}, r));
  }
  return out;
}

VerificationRecord do_COR_SURF(const VerificationCase& c) {
  if (!std::holds_alternative<SurfaceMeasure>(c.mu.rep))
    throw Reject{"COR-SURF requires a triangulated surface measure"};
  require_support_in_ball(c.mu, c.r, "COR-SURF");
  LipschitzConstants lc;
  try {
    lc = lipschitz_constants(c.mu);
  } catch (const std::invalid_argument& e) {
    throw Reject{std::string("surface rejected: ") + e.what()};
  }
  const Dimension d(c.mu.dim);
  const double dd = (double)d.value;
  const double sigma = surface_measure_total(std::get<SurfaceMeasure>(c.mu.rep));
  const IntegralResult lhs = lhs_or_reject(c.U, c.mu);
  const double T = characteristic_or_reject(c.U, c.r, c.R, nullptr);
  std::vector<Factor> fs = {
      {"prefactor", 3.0 * std::pow(dd, 2.0 * dd) * std::pow(lc.lip * lc.lip_inv, dd - 1.0)},
      {"A_d", constant_A(d, c.r, c.R)},
      {"T_U", T},
      {"bracket", sigma + std::pow(sigma, 1.0 / (dd - 1.0))}};
  return make_record(c, c.label, lhs.value, lhs.err, std::move(fs), {});
}

std::vector<VerificationRecord> do_DISKBALL(const VerificationCase& c) {
  if (!c.sweep) throw Reject{"COR-DISKBALL requires sweep radii"};
  const Dimension d(c.mu.dim);
  const double dd = (double)d.value;
  for (const auto& ch : c.U.positive)
    if (norm(ch.at) >= 1.0) throw Reject{"COR-DISKBALL: charge outside the unit ball"};
  for (const auto& ch : c.U.negative)
    if (norm(ch.at) >= 1.0) throw Reject{"COR-DISKBALL: charge outside the unit ball"};
  require_support_in_ball(c.mu, 1.0, "COR-DISKBALL");

  std::vector<VerificationRecord> out;
  for (double r : c.sweep->radii) {
    if (!(r > 0.0 && r < 1.0)) throw Reject{"COR-DISKBALL: sweep radius outside (0,1)"};
    const double s = c.sweep->s_of(r);
    if (!(s > 0.0 && s < 1.0 - r))
      throw Reject{"COR-DISKBALL: need 0 < s(r) < 1-r at r = " + std::to_string(r)};
    const Measure part = restrict_to_ball(c.mu, r);
    const double murad = total_mass(part);
    std::vector<std::string> caveats = {"supN-grid-lower-bound", "sup-over-supp-mu-r"};
    double supN = 0.0;
    if (murad > 0.0) {
      for (const Vec& y : support_sample_points(part, c.sup_candidates)) {
        const ExtendedReal N = radial_counting_N(part, y, r, d);
        if (N.is_pos_inf()) throw Reject{"COR-DISKBALL: N condition fails (atom at a center)"};
        supN = std::max(supN, N.v);
      }
    }
    const IntegralResult lhs = murad > 0.0 ? lhs_or_reject(c.U, part) : IntegralResult{};
    const double T = characteristic_or_reject(c.U, r, r + s, nullptr);
    std::vector<Factor> fs = {
        {"prefactor", std::pow(3.0, 2.0 * dd) / std::pow(s, dd - 1.0)},
        {"T_U", T},
        {"bracket", murad / std::pow(r, dd - 2.0) + supN}};
    out.push_back(make_record(c, c.label + "@r=" + std::to_string(r), lhs.value, lhs.err,
                              std::move(fs), caveats, r));
  }
  return out;
}

}  // namespace

CaseOutcome verify_case(const VerificationCase& c) {
  CaseOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    validate_measure(c.mu);
    validate_function(c.U);
    if (!(c.r > 0.0)) throw Reject{"need r > 0"};
    if (!c.sweep && !(c.R > c.r)) throw Reject{"need R > r"};
    switch (c.theorem) {
      case TheoremId::T1:
        out.records.push_back(do_T1(c));
        break;
      case TheoremId::T2C:
      case TheoremId::T2D:
        out.records.push_back(do_T2(c));
        break;
      case TheoremId::T3i:
      case TheoremId::T3ii:
        out.records = do_T3(c);
        break;
      case TheoremId::T5C:
      case TheoremId::T5D:
        out.records.push_back(do_T5(c));
        break;
      case TheoremId::CorLeb:
      case TheoremId::CorLebSweep:
        out.records = do_COR_LEB(c);
        break;
      case TheoremId::CorCurve:
      case TheoremId::CorCurveSweep:
        out.records = do_COR_CURVE(c);
        break;
      case TheoremId::CorSurf:
        out.records.push_back(do_COR_SURF(c));
        break;
      case TheoremId::CorDiskBall:
        out.records = do_DISKBALL(c);
        break;
    }
  } catch (const Reject& r) {
    out.records.clear();
    out.rejected = RejectedCase{c.label, theorem_name(c.theorem), r.reason};
  } catch (const std::exception& e) {
    out.records.clear();
    out.rejected = RejectedCase{c.label, theorem_name(c.theorem), std::string("error: ") + e.what()};
  }
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
  for (auto& rec : out.records) rec.ms = ms / (double)out.records.size();
  return out;
}

CorpusReport run_corpus(const std::vector<VerificationCase>& cases, const RunOptions& opts) {
  CorpusReport rep;
  rep.seed = opts.seed;
  std::vector<CaseOutcome> outcomes(cases.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < cases.size(); ++i) outcomes[i] = verify_case(cases[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= cases.size()) return;
          outcomes[i] = verify_case(cases[i]);
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& oc : outcomes) {
    if (oc.rejected) rep.rejected.push_back(*oc.rejected);
    for (auto& rec : oc.records) rep.records.push_back(std::move(rec));
  }
  if (opts.corrupt_rhs_scale != 1.0) {
    for (auto& rec : rep.records) {
      if (rec.factors.empty()) continue;
      rec.factors[0].value *= opts.corrupt_rhs_scale;
      rec.rhs = factor_product(rec.factors);
      rec.ok = rec.lhs + rec.lhs_err <= rec.rhs * (1.0 + rec.tol_rel) + defaults::kPassAbsTol;
      rec.ratio = rec.lhs == 0.0 ? 0.0
                                 : (rec.rhs > 0.0 ? rec.lhs / rec.rhs
                                                  : std::numeric_limits<double>::infinity());
      rec.caveats.push_back("selftest-corrupted-constant");
    }
  }
  for (const auto& rec : rep.records) (rec.ok ? rep.n_ok : rep.n_violation)++;
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma-2 monotone maps
// ---------------------------------------------------------------------------

bool lemma2_monotone_d2(const Gauge& h, double r, double B, int npts, double* worst) {
  const SlopeResult slope = slope_s(h, Dimension(2));
  if (!slope.admissible()) return false;
  const double hr = h(r);
  double prev = 0.0;
  double w = 0.0;
  bool ok = true;
  for (int i = 1; i < npts; ++i) {
    const double x = hr * (double)i / (double)(npts - 1);
    const double y = gauge_inverse(h, x);
    const double g = x * std::log(B * std::exp(slope.s.v) / y);
    const double slack = 1e-12 * std::max(std::abs(g), 1.0);
    if (g < prev - slack) {
      ok = false;
      w = std::max(w, prev - g);
    }
    prev = g;
  }
  if (worst) *worst = w;
  return ok;
}

bool lemma2_monotone_d3(const Gauge& h, double r, int npts, double* worst) {
  const SlopeResult slope = slope_s(h, Dimension(3));
  if (!slope.admissible()) return false;
  const double hr = h(r);
  double prev = 0.0;
  double w = 0.0;
  bool ok = true;
  for (int i = 1; i < npts; ++i) {
    const double x = hr * (double)i / (double)(npts - 1);
    const double y = gauge_inverse(h, x);
    const double g = x / y;
    const double slack = 1e-12 * std::max(std::abs(g), 1.0);
    if (g < prev - slack) {
      ok = false;
      w = std::max(w, prev - g);
    }
    prev = g;
  }
  if (worst) *worst = w;
  return ok;
}

}  // namespace potbound
