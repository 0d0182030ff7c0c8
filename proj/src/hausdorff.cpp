#include "potbound/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace potbound {

namespace {

uint64_t pack(const std::array<int, 3>& c) {
  // offset so probe indices slightly outside the box stay collision-free
  const uint64_t a = (uint64_t)(c[0] + (1 << 20)) & 0x1FFFFF;
  const uint64_t b = (uint64_t)(c[1] + (1 << 20)) & 0x1FFFFF;
  const uint64_t d = (uint64_t)(c[2] + (1 << 20)) & 0x1FFFFF;
  return (a << 42) | (b << 21) | d;
}

// ---- cover candidates ------------------------------------------------------

struct Candidate {
  std::vector<CoverBall> balls;
  double cost;
  std::string family;
};

bool radius_allowed(double r, double t) { return r < t; }

// single enclosing ball of the whole cell union
std::optional<Candidate> single_ball(const CompactSet& S, const Gauge& h, double t) {
  std::vector<Vec> centers;
  centers.reserve(S.cells.size());
  for (const auto& c : S.cells) centers.push_back(S.cell_center(c));
  Ball b = min_enclosing_ball(centers, S.dim());
  b.radius += S.cell_half_diag();
  if (!radius_allowed(b.radius, t)) return std::nullopt;
  Candidate cand;
  cand.balls = {{b.center, b.radius}};
  cand.cost = h(b.radius);
  cand.family = "single-ball";
  return cand;
}

// uniform cover at dyadic level j: one circumball per occupied level-j cell
std::optional<Candidate> uniform_cover(const CompactSet& S, const Gauge& h, double t, int j) {
  const int shift = S.k - j;
  if (shift < 0) return std::nullopt;
  const double side_j = std::ldexp(S.box.size, -j);
  const double rad = 0.5 * side_j * std::sqrt((double)S.dim());
  if (!radius_allowed(rad, t)) return std::nullopt;
  std::vector<std::array<int, 3>> coarse;
  coarse.reserve(S.cells.size());
  for (const auto& c : S.cells)
    coarse.push_back({c[0] >> shift, c[1] >> shift, S.dim() == 3 ? c[2] >> shift : 0});
  std::sort(coarse.begin(), coarse.end());
  coarse.erase(std::unique(coarse.begin(), coarse.end()), coarse.end());
  Candidate cand;
  cand.family = "uniform-2^-" + std::to_string(j);
  cand.cost = 0.0;
  const double cost1 = h(rad);
  for (const auto& c : coarse) {
    const Vec corner{S.box.lo.x + c[0] * side_j, S.box.lo.y + c[1] * side_j,
                     S.dim() == 3 ? S.box.lo.z + c[2] * side_j : 0.0};
    const Vec center = corner + 0.5 * Vec{side_j, side_j, S.dim() == 3 ? side_j : 0.0};
    cand.balls.push_back({center, rad});
    cand.cost += cost1;
  }
  return cand;
}

// greedy max-coverage-per-cost set cover over balls centered at unit centers
// with dyadic radii; units are the cells grouped to a budget-sized level
std::optional<Candidate> greedy_cover(const CompactSet& S, const Gauge& h, double t,
                                      const ContentOptions& opts) {
  // coarsen to at most the budget
  int ju = S.k;
  std::vector<std::array<int, 3>> units = S.cells;
  while ((int)units.size() > opts.greedy_cell_budget && ju > 0) {
    --ju;
    for (auto& c : units)
      c = {c[0] >> 1, c[1] >> 1, S.dim() == 3 ? c[2] >> 1 : 0};
    std::sort(units.begin(), units.end());
    units.erase(std::unique(units.begin(), units.end()), units.end());
  }
  const double side_u = std::ldexp(S.box.size, -ju);
  const double hd_u = 0.5 * side_u * std::sqrt((double)S.dim());
  const size_t n = units.size();
  std::vector<Vec> centers(n);
  std::unordered_map<uint64_t, int> index;
  index.reserve(2 * n);
  for (size_t i = 0; i < n; ++i) {
    const Vec corner{S.box.lo.x + units[i][0] * side_u, S.box.lo.y + units[i][1] * side_u,
                     S.dim() == 3 ? S.box.lo.z + units[i][2] * side_u : 0.0};
    centers[i] = corner + 0.5 * Vec{side_u, side_u, S.dim() == 3 ? side_u : 0.0};
    index[pack(units[i])] = (int)i;
  }

  // dyadic radii: smallest covers one unit, largest the whole set
  std::vector<double> radii;
  for (double r = hd_u; r <= S.box.size * std::sqrt((double)S.dim()); r *= 2.0)
    if (radius_allowed(r, t)) radii.push_back(r);
  if (radii.empty()) return std::nullopt;

  // units whose circumball fits inside B(center_i, r); scans the index
  // window for small radii, the whole unit list otherwise
  const bool threed = S.dim() == 3;
  auto covered = [&](int ci, double r,
                     const std::vector<char>& done) -> std::vector<int> {
    std::vector<int> found;
    const long span = (long)std::floor((r + hd_u) / side_u) + 1;
    const double window = std::pow((double)(2 * span + 1), (double)S.dim());
    if (window > (double)n) {
      for (size_t ui = 0; ui < n; ++ui) {
        if (done[ui]) continue;
        if (dist(centers[ci], centers[ui]) + hd_u <= r) found.push_back((int)ui);
      }
      return found;
    }
    const auto& u0 = units[ci];
    for (long di = -span; di <= span; ++di)
      for (long dj = -span; dj <= span; ++dj)
        for (long dl = threed ? -span : 0; dl <= (threed ? span : 0); ++dl) {
          auto it = index.find(pack({u0[0] + (int)di, u0[1] + (int)dj,
                                     threed ? u0[2] + (int)dl : 0}));
          if (it == index.end()) continue;
          const int ui = it->second;
          if (done[ui]) continue;
          if (dist(centers[ci], centers[ui]) + hd_u <= r) found.push_back(ui);
        }
    return found;
  };

  struct Entry {
    double score;
    int ci;
    int ri;
    bool exact;
    bool operator<(const Entry& o) const {
      if (score != o.score) return score < o.score;
      if (ci != o.ci) return ci > o.ci;  // lexicographic tie-break
      return ri > o.ri;
    }
  };

  // optimistic seeds: a ball of radius r holds at most (2r/side + 1)^dim units
  std::vector<char> done(n, 0);
  std::priority_queue<Entry> heap;
  for (size_t i = 0; i < n; ++i)
    for (size_t ri = 0; ri < radii.size(); ++ri) {
      const double ub = std::min(
          (double)n, std::pow(2.0 * radii[ri] / side_u + 1.0, (double)S.dim()));
      heap.push({ub / std::max(h(radii[ri]), 1e-300), (int)i, (int)ri, false});
    }

  Candidate cand;
  cand.family = "greedy";
  cand.cost = 0.0;
  size_t remaining = n;
  while (remaining > 0 && !heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    const auto list = covered(e.ci, radii[e.ri], done);
    if (list.empty()) continue;
    const double score = (double)list.size() / std::max(h(radii[e.ri]), 1e-300);
    if (!heap.empty() && score < heap.top().score) {
      heap.push({score, e.ci, e.ri, true});  // lazy re-evaluation
      continue;
    }
    for (int ui : list) done[ui] = 1;
    remaining -= list.size();
    cand.balls.push_back({centers[e.ci], radii[e.ri]});
    cand.cost += h(radii[e.ri]);
  }
  if (remaining > 0) return std::nullopt;
  return cand;
}

}  // namespace

bool cover_covers(const CompactSet& S, const std::vector<CoverBall>& cover, double t) {
  for (const auto& b : cover)
    if (!(b.r < t) || !(b.r >= 0.0)) return false;
  for (const auto& cell : S.cells) {
    bool ok = false;
    for (const auto& b : cover)
      if (cell_in_ball(S, cell, b.c, b.r)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

ContentEstimate content_upper(const CompactSet& S, const Gauge& h, double t,
                              const ContentOptions& opts) {
  if (S.cells.empty()) throw std::invalid_argument("content_upper: empty set");
  if (!(t > 0.0)) throw std::domain_error("content_upper: cover radius must be > 0");

  // if even the finest cells are too fat for the radius cap, refine
  CompactSet Sr = S;
  while (Sr.cell_half_diag() >= t && Sr.k < S.k + 14) Sr = at_resolution(Sr, Sr.k + 1);

  std::vector<Candidate> cands;
  if (auto c = single_ball(Sr, h, t)) cands.push_back(std::move(*c));
  for (int j = 0; j <= Sr.k; ++j)
    if (auto c = uniform_cover(Sr, h, t, j)) cands.push_back(std::move(*c));
  if (opts.use_greedy)
    if (auto c = greedy_cover(Sr, h, t, opts)) cands.push_back(std::move(*c));
  if (cands.empty()) throw std::runtime_error("content_upper: no feasible cover found");

  const Candidate* best = &cands[0];
  for (const auto& c : cands)
    if (c.cost < best->cost) best = &c;

  if (!cover_covers(Sr, best->balls, t))
    throw std::runtime_error("content_upper: internal error, infeasible cover");

  ContentEstimate est;
  est.t = t;
  est.upper = best->cost;
  est.cover = best->balls;
  est.cover_family = best->family;
  return est;
}

// ---------------------------------------------------------------------------
// Frostman lower bound via the dyadic normalization scheme
// ---------------------------------------------------------------------------

ContentEstimate frostman_lower(const CompactSet& S, const Gauge& h, const ContentOptions&) {
  if (S.cells.empty()) throw std::invalid_argument("frostman_lower: empty set");
  const double L = S.box.size;
  const int k = S.k;
  const size_t n = S.cells.size();

  // leaf masses h(half level-k side), then cap every coarser generation
  std::vector<double> mass(n, h(std::ldexp(L, -(k + 1))));
  for (int j = k - 1; j >= 0; --j) {
    const int shift = k - j;
    const double cap = h(std::ldexp(L, -(j + 1)));
    std::unordered_map<uint64_t, double> sums;
    sums.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
      const auto& c = S.cells[i];
      sums[pack({c[0] >> shift, c[1] >> shift, S.dim() == 3 ? c[2] >> shift : 0})] += mass[i];
    }
    for (size_t i = 0; i < n; ++i) {
      const auto& c = S.cells[i];
      const double sum = sums[pack({c[0] >> shift, c[1] >> shift, S.dim() == 3 ? c[2] >> shift : 0})];
      if (sum > cap) mass[i] *= cap / sum;
    }
  }

  double total = 0.0;
  for (double m : mass) total += m;

  // measured modulus/h ratio: any ball of radius t sits inside a 2^d block
  // of adjacent level-j cells once 2^-j L >= 2t
  double C = 0.0;
  const bool threed = S.dim() == 3;
  for (int j = 0; j <= k; ++j) {
    const int shift = k - j;
    std::unordered_map<uint64_t, double> sums;
    sums.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
      const auto& c = S.cells[i];
      sums[pack({c[0] >> shift, c[1] >> shift, threed ? c[2] >> shift : 0})] += mass[i];
    }
    double block_max = 0.0;
    std::vector<std::array<int, 3>> occ;
    occ.reserve(sums.size());
    for (size_t i = 0; i < n; ++i) {
      const auto& c = S.cells[i];
      occ.push_back({c[0] >> shift, c[1] >> shift, threed ? c[2] >> shift : 0});
    }
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    for (const auto& c : occ) {
      for (int ai = -1; ai <= 0; ++ai)
        for (int aj = -1; aj <= 0; ++aj)
          for (int al = threed ? -1 : 0; al <= 0; ++al) {
            double blk = 0.0;
            for (int bi = 0; bi <= 1; ++bi)
              for (int bj = 0; bj <= 1; ++bj)
                for (int bl = 0; bl <= (threed ? 1 : 0); ++bl) {
                  auto it = sums.find(pack({c[0] + ai + bi, c[1] + aj + bj,
                                            threed ? c[2] + al + bl : 0}));
                  if (it != sums.end()) blk += it->second;
                }
            block_max = std::max(block_max, blk);
          }
    }
    // the block bound certifies all t with 2^-j L >= 2t > 2^-(j+1) L
    const double t_lo = std::ldexp(L, -(j + 2));
    C = std::max(C, block_max / std::max(h(t_lo), 1e-300));
  }
  // very large t: a single ball may hold everything, h(t) >= h(L/2)
  C = std::max(C, total / std::max(h(0.5 * L), 1e-300));

  ContentEstimate est;
  est.frostman_C = C;
  est.lower = C > 0.0 ? total / C : 0.0;

  AtomicMeasure am;
  am.atoms.reserve(n);
  for (size_t i = 0; i < n; ++i)
    if (mass[i] > 0.0) am.atoms.push_back({S.cell_center(S.cells[i]), mass[i]});
  Measure fm;
  fm.dim = S.dim();
  fm.rep = std::move(am);
  const Ball sb = min_enclosing_ball([&] {
    std::vector<Vec> pts;
    for (const auto& c : S.cells) pts.push_back(S.cell_center(c));
    return pts;
  }(), S.dim());
  fm.bounding_radius = norm(sb.center) + sb.radius + 1e-9;
  fm.label = S.label.empty() ? "frostman" : "frostman(" + S.label + ")";
  est.frostman = std::move(fm);
  return est;
}

ContentEstimate p_content(const CompactSet& S, double p, double t, const ContentOptions& opts) {
  const Gauge h = power_gauge(c_p(p), p);
  ContentEstimate up = content_upper(S, h, t, opts);
  ContentEstimate lo = frostman_lower(S, h, opts);
  up.lower = lo.lower;
  up.frostman_C = lo.frostman_C;
  up.frostman = std::move(lo.frostman);
  return up;
}

std::pair<bool, std::vector<MonotonicityRow>> content_monotonicity_check(
    const CompactSet& S, const Gauge& h, std::vector<double> t_list,
    const ContentOptions& opts) {
  std::sort(t_list.begin(), t_list.end(), std::greater<double>());
  std::vector<MonotonicityRow> rows;
  for (double t : t_list) rows.push_back({t, content_upper(S, h, t, opts).upper});
  bool ok = true;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].upper < rows[i - 1].upper * (1.0 - 1e-9)) ok = false;
  return {ok, rows};
}

}  // namespace potbound
