#pragma once

#include <limits>
#include <string>
#include <vector>

#include "potbound/compact_set.hpp"
#include "potbound/gauge.hpp"
#include "potbound/measure.hpp"

namespace potbound {

struct CoverBall {
  Vec c;
  double r;
};

struct ContentOptions {
  bool use_greedy = true;
  int greedy_cell_budget = defaults::kGreedyCellBudget;
};

// Certified two-sided estimate of the h-content m_h^t(S).
//   upper: cost of the best feasible cover found (radii < t, exact
//          cell-inclusion feasibility) — an upper bound of the infimum.
//   lower: mu(S)/C from the dyadic Frostman measure mu, certified against
//          the ratio constant frostman_C measured on a log grid of radii.
struct ContentEstimate {
  double t = std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::vector<CoverBall> cover;
  std::string cover_family;
  double lower = 0.0;
  double frostman_C = 0.0;
  Measure frostman;  // atomic measure on cell centers realizing the lower bound
};

ContentEstimate content_upper(const CompactSet& S, const Gauge& h, double t,
                              const ContentOptions& opts = {});

ContentEstimate frostman_lower(const CompactSet& S, const Gauge& h,
                               const ContentOptions& opts = {});

// Upper and lower parts together for the normalized power gauge h_p = c_p x^p.
ContentEstimate p_content(const CompactSet& S, double p, double t,
                          const ContentOptions& opts = {});

// Exact feasibility: every cell of S inside some ball, all radii < t.
bool cover_covers(const CompactSet& S, const std::vector<CoverBall>& cover, double t);

struct MonotonicityRow {
  double t;
  double upper;
};

// Evaluates upper bounds along a decreasing list of cover radii and checks
// they are non-decreasing as t shrinks (within a small relative slack).
std::pair<bool, std::vector<MonotonicityRow>> content_monotonicity_check(
    const CompactSet& S, const Gauge& h, std::vector<double> t_list,
    const ContentOptions& opts = {});

}  // namespace potbound
