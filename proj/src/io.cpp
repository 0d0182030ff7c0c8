#include "potbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace potbound {

using nlohmann::json;

namespace {

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open " + p.string());
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
  return j;
}

Vec parse_point(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3) throw ParseError("point must be [x,y] or [x,y,z]");
  Vec v;
  v.x = j[0].get<double>();
  v.y = j[1].get<double>();
  if (j.size() == 3) v.z = j[2].get<double>();
  return v;
}

double parse_radius_or_inf(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ParseError("radius must be a number or \"inf\"");
  }
  return j.get<double>();
}

Measure parse_measure(const json& j) {
  Measure m;
  const std::string type = j.at("type").get<std::string>();
  m.dim = j.value("d", 2);
  m.label = j.value("label", type);

  if (type == "atomic") {
    AtomicMeasure am;
    for (const auto& a : j.at("atoms"))
      am.atoms.push_back({parse_point(a.at("point")), a.at("mass").get<double>()});
    m.rep = std::move(am);
  } else if (type == "polyline") {
    PolylineMeasure pm;
    std::vector<Vec> chain;
    for (const auto& v : j.at("vertices")) chain.push_back(parse_point(v));
    pm.chains = {std::move(chain)};
    pm.closed = j.value("closed", false);
    pm.rate = j.value("rate", 1.0);
    m.rep = std::move(pm);
  } else if (type == "polyline_arc") {
    PolylineMeasure pm;
    const Vec c = parse_point(j.at("center"));
    const double rad = j.at("radius").get<double>();
    const double a0 = j.at("angle0").get<double>();
    const double a1 = j.at("angle1").get<double>();
    const int n = j.value("segments", 64);
    std::vector<Vec> chain;
    for (int i = 0; i <= n; ++i) {
      const double a = a0 + (a1 - a0) * (double)i / (double)n;
      chain.push_back({c.x + rad * std::cos(a), c.y + rad * std::sin(a), 0.0});
    }
    pm.chains = {std::move(chain)};
    pm.rate = j.value("rate", 1.0);
    m.rep = std::move(pm);
  } else if (type == "graph") {
    const auto xs = j.at("xs").get<std::vector<double>>();
    const auto ys = j.at("ys").get<std::vector<double>>();
    Measure g = curve_measure_from_graph(xs, ys, j.at("q").get<double>(), j.value("rate", 1.0));
    g.label = m.label;
    if (j.contains("bounding_radius")) g.bounding_radius = j.at("bounding_radius").get<double>();
    return g;
  } else if (type == "grid" || type == "grid_region") {
    GridMeasure gm;
    gm.cell_side = j.at("cell_side").get<double>();
    gm.origin = parse_point(j.at("origin"));
    if (type == "grid") {
      for (const auto& c : j.at("cells")) {
        std::array<int, 3> idx{0, 0, 0};
        for (size_t i = 0; i < c.size(); ++i) idx[i] = c[i].get<int>();
        gm.cells.push_back(idx);
      }
    } else {
      const auto& reg = j.at("region");
      const std::string kind = reg.at("kind").get<std::string>();
      const int span = j.at("span").get<int>();  // scan [-span, span]^dim cell indices
      const bool threed = m.dim == 3;
      for (int i = -span; i <= span; ++i)
        for (int jj = -span; jj <= span; ++jj)
          for (int l = threed ? -span : 0; l <= (threed ? span : 0); ++l) {
            const Vec center{gm.origin.x + (i + 0.5) * gm.cell_side,
                             gm.origin.y + (jj + 0.5) * gm.cell_side,
                             threed ? gm.origin.z + (l + 0.5) * gm.cell_side : 0.0};
            bool in = false;
            if (kind == "disk") {
              in = dist(center, parse_point(reg.at("center"))) <= reg.at("radius").get<double>();
            } else if (kind == "annulus") {
              const double dd = dist(center, parse_point(reg.at("center")));
              in = dd >= reg.at("r_inner").get<double>() && dd <= reg.at("r_outer").get<double>();
            } else if (kind == "rect") {
              const Vec lo = parse_point(reg.at("lo")), hi = parse_point(reg.at("hi"));
              in = center.x >= lo.x && center.x <= hi.x && center.y >= lo.y && center.y <= hi.y &&
                   (!threed || (center.z >= lo.z && center.z <= hi.z));
            } else {
              throw ParseError("unknown grid region kind: " + kind);
            }
            if (in) gm.cells.push_back({i, jj, threed ? l : 0});
          }
    }
    std::sort(gm.cells.begin(), gm.cells.end());
    gm.cells.erase(std::unique(gm.cells.begin(), gm.cells.end()), gm.cells.end());
    if (j.contains("density")) {
      if (j.at("density").is_number())
        gm.density.assign(gm.cells.size(), j.at("density").get<double>());
      else
        gm.density = j.at("density").get<std::vector<double>>();
    }
    m.rep = std::move(gm);
  } else if (type == "triangulated") {
    SurfaceMeasure sm;
    for (const auto& t : j.at("triangles")) {
      SurfaceChart ch;
      for (int i = 0; i < 3; ++i) ch.xyz[i] = parse_point(t.at("xyz")[i]);
      if (t.contains("ref"))
        for (int i = 0; i < 3; ++i) ch.ref[i] = parse_point(t.at("ref")[i]);
      else
        for (int i = 0; i < 3; ++i) ch.ref[i] = {ch.xyz[i].x, ch.xyz[i].y, 0.0};
      sm.charts.push_back(ch);
    }
    m.rep = std::move(sm);
    m.dim = 3;
  } else if (type == "graph_surface") {
    // z = a x + b y + c over [x0,x1] x [y0,y1], reference = the shadow
    SurfaceMeasure sm;
    const double a = j.at("a").get<double>(), b = j.at("b").get<double>(),
                 c0 = j.value("c", 0.0);
    const double x0 = j.at("x0").get<double>(), x1 = j.at("x1").get<double>();
    const double y0 = j.at("y0").get<double>(), y1 = j.at("y1").get<double>();
    const int nx = j.value("nx", 8), ny = j.value("ny", 8);
    auto lift = [&](double x, double y) { return Vec{x, y, a * x + b * y + c0}; };
    for (int i = 0; i < nx; ++i)
      for (int jj = 0; jj < ny; ++jj) {
        const double xa = x0 + (x1 - x0) * i / nx, xb = x0 + (x1 - x0) * (i + 1) / nx;
        const double ya = y0 + (y1 - y0) * jj / ny, yb = y0 + (y1 - y0) * (jj + 1) / ny;
        SurfaceChart c1, c2;
        c1.ref = {Vec{xa, ya, 0}, Vec{xb, ya, 0}, Vec{xb, yb, 0}};
        c1.xyz = {lift(xa, ya), lift(xb, ya), lift(xb, yb)};
        c2.ref = {Vec{xa, ya, 0}, Vec{xb, yb, 0}, Vec{xa, yb, 0}};
        c2.xyz = {lift(xa, ya), lift(xb, yb), lift(xa, yb)};
        sm.charts.push_back(c1);
        sm.charts.push_back(c2);
      }
    m.rep = std::move(sm);
    m.dim = 3;
  } else if (type == "cantor") {
    CantorMeasure cm;
    cm.level = j.value("level", 12);
    cm.corner = parse_point(j.at("corner"));
    cm.extent = j.at("extent").get<double>();
    cm.total = j.value("mass", 1.0);
    cm.base = j.value("base", std::string("interval")) == "square"
                  ? CantorMeasure::Base::Square
                  : CantorMeasure::Base::Interval;
    m.rep = cm;
  } else {
    throw ParseError("unknown measure type: " + type);
  }

  if (j.contains("bounding_radius")) {
    m.bounding_radius = j.at("bounding_radius").get<double>();
  } else {
    const Ball b = support_ball(m);
    m.bounding_radius = norm(b.center) + b.radius + 1e-9;
  }
  validate_measure(m);
  return m;
}

DeltaSubharmonic parse_function(const json& j) {
  DeltaSubharmonic u;
  u.dim = j.value("d", 2);
  u.constant = j.value("constant", 0.0);
  u.label = j.value("label", "");
  if (j.contains("rational")) {
    if (u.dim != 2) throw ParseError("rational form requires d = 2");
    const auto& r = j.at("rational");
    for (const auto& z : r.at("zeros")) u.positive.push_back({parse_point(z), 1.0});
    for (const auto& p : r.at("poles")) u.negative.push_back({parse_point(p), 1.0});
    const double lead = r.value("leading", 1.0);
    if (!(lead > 0.0)) throw ParseError("rational leading coefficient must be > 0");
    u.constant += std::log(lead);
  }
  if (j.contains("positive"))
    for (const auto& c : j.at("positive"))
      u.positive.push_back({parse_point(c.at("point")), c.value("mass", 1.0)});
  if (j.contains("negative"))
    for (const auto& c : j.at("negative"))
      u.negative.push_back({parse_point(c.at("point")), c.value("mass", 1.0)});
  validate_function(u);
  return u;
}

Gauge parse_gauge(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    const double domain =
        j.contains("domain_r") ? parse_radius_or_inf(j.at("domain_r"))
                               : std::numeric_limits<double>::infinity();
    return power_gauge(j.at("b").get<double>(), j.at("p").get<double>(), domain);
  }
  if (kind == "power_log")
    return power_log_gauge(j.at("b").get<double>(), j.at("p").get<double>(),
                           j.at("q").get<double>(), j.at("domain_r").get<double>());
  if (kind == "tabulated") {
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : j.at("samples")) samples.push_back({s[0].get<double>(), s[1].get<double>()});
    return tabulated_gauge(std::move(samples), j.value("right_step", false));
  }
  throw ParseError("unknown gauge kind: " + kind);
}

CompactSet parse_set(const json& j) {
  DyadicBox box;
  box.dim = j.value("d", 2);
  const auto& b = j.at("box");
  box.lo = parse_point(b.at("lo"));
  box.size = b.at("size").get<double>();
  const int k = j.value("resolution", defaults::kDyadicResolution);
  const auto& pr = j.at("primitive");
  const std::string kind = pr.at("kind").get<std::string>();
  SetPrimitive prim;
  if (kind == "segment") {
    prim = SegmentPrim{parse_point(pr.at("a")), parse_point(pr.at("b"))};
  } else if (kind == "disk") {
    prim = DiskPrim{parse_point(pr.at("center")), pr.at("radius").get<double>()};
  } else if (kind == "rect") {
    prim = RectPrim{parse_point(pr.at("lo")), parse_point(pr.at("hi"))};
  } else if (kind == "arc") {
    prim = ArcPrim{parse_point(pr.at("center")), pr.at("radius").get<double>(),
                   pr.at("angle0").get<double>(), pr.at("angle1").get<double>()};
  } else if (kind == "cantor") {
    prim = CantorPrim{pr.value("level", 12), pr.at("x0").get<double>(),
                      pr.at("y0").get<double>(), pr.at("len").get<double>()};
  } else if (kind == "cells") {
    CellListPrim clp;
    for (const auto& c : pr.at("cells")) {
      std::array<int, 3> idx{0, 0, 0};
      for (size_t i = 0; i < c.size(); ++i) idx[i] = c[i].get<int>();
      clp.cells.push_back(idx);
    }
    prim = std::move(clp);
  } else {
    throw ParseError("unknown set primitive: " + kind);
  }
  CompactSet S = rasterize(prim, box, k);
  S.label = j.value("label", kind);
  return S;
}

SweepSpec parse_sweep(const json& j) {
  SweepSpec sw;
  sw.radii = j.at("radii").get<std::vector<double>>();
  if (j.contains("s")) {
    const auto& s = j.at("s");
    const std::string kind = s.value("kind", "proportional");
    sw.kind = kind == "gap" ? SweepSpec::Kind::Gap : SweepSpec::Kind::Proportional;
    sw.c = s.value("c", 1.0);
  }
  return sw;
}

}  // namespace

Measure load_measure(const std::filesystem::path& p) { return parse_measure(read_json_file(p)); }
DeltaSubharmonic load_function(const std::filesystem::path& p) { return parse_function(read_json_file(p)); }
CompactSet load_set(const std::filesystem::path& p) { return parse_set(read_json_file(p)); }
Gauge load_gauge(const std::filesystem::path& p) { return parse_gauge(read_json_file(p)); }

Measure measure_from_json_text(const std::string& text) { return parse_measure(json::parse(text)); }
DeltaSubharmonic function_from_json_text(const std::string& text) { return parse_function(json::parse(text)); }
CompactSet set_from_json_text(const std::string& text) { return parse_set(json::parse(text)); }
Gauge gauge_from_json_text(const std::string& text) { return parse_gauge(json::parse(text)); }

std::vector<VerificationCase> load_corpus(const std::filesystem::path& p) {
  const json j = read_json_file(p);
  const auto base = p.parent_path();
  std::vector<VerificationCase> cases;
  for (const auto& cj : j.at("cases")) {
    VerificationCase c;
    c.label = cj.at("label").get<std::string>();
    c.theorem = theorem_from_string(cj.at("theorem").get<std::string>());
    try {
      const auto& fj = cj.at("function");
      c.U = fj.is_string() ? load_function(base / fj.get<std::string>()) : parse_function(fj);
      const auto& mj = cj.at("measure");
      c.mu = mj.is_string() ? load_measure(base / mj.get<std::string>()) : parse_measure(mj);
      if (cj.contains("gauge")) {
        const auto& gj = cj.at("gauge");
        c.gauge = gj.is_string() ? load_gauge(base / gj.get<std::string>()) : parse_gauge(gj);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError("case " + c.label + ": " + e.what());
    }
    c.r = cj.value("r", 1.0);
    c.R = cj.value("R", c.r * 2.0);
    c.b = cj.value("b", 0.0);
    c.p = cj.value("p", 0.0);
    if (cj.contains("content_t")) c.content_t = parse_radius_or_inf(cj.at("content_t"));
    if (cj.contains("resolution")) c.resolution = cj.at("resolution").get<int>();
    if (cj.contains("sup_candidates")) c.sup_candidates = cj.at("sup_candidates").get<int>();
    if (cj.contains("sweep")) c.sweep = parse_sweep(cj.at("sweep"));
    cases.push_back(std::move(c));
  }
  return cases;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string join_caveats(const std::vector<std::string>& cs) {
  std::string out;
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ';';
    out += cs[i];
  }
  return out;
}

}  // namespace

void write_report_csv(const std::filesystem::path& p, const CorpusReport& rep) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << "# potbound verify report; seed=" << rep.seed << "\n";
  out << "label,theorem,lhs,lhs_err,rhs,ratio,ok,caveats,ms\n";
  for (const auto& r : rep.records) {
    out << r.label << ',' << theorem_name(r.theorem) << ',' << format_double17(r.lhs) << ','
        << format_double17(r.lhs_err) << ',' << format_double17(r.rhs) << ','
        << format_double17(r.ratio) << ',' << (r.ok ? "true" : "false") << ','
        << join_caveats(r.caveats) << ',' << (long long)std::llround(r.ms) << "\n";
  }
}

void write_report_json(const std::filesystem::path& p, const CorpusReport& rep) {
  json j;
  j["seed"] = rep.seed;
  j["summary"] = {{"records", rep.records.size()},
                  {"ok", rep.n_ok},
                  {"violations", rep.n_violation},
                  {"rejected", rep.rejected.size()}};
  j["records"] = json::array();
  for (const auto& r : rep.records) {
    json rj;
    rj["label"] = r.label;
    rj["theorem"] = theorem_name(r.theorem);
    rj["lhs"] = format_double17(r.lhs);
    rj["lhs_err"] = format_double17(r.lhs_err);
    rj["rhs"] = format_double17(r.rhs);
    rj["ratio"] = format_double17(r.ratio);
    rj["ok"] = r.ok;
    rj["tol_rel"] = format_double17(r.tol_rel);
    if (!std::isnan(r.sweep_r)) rj["sweep_r"] = format_double17(r.sweep_r);
    rj["caveats"] = r.caveats;
    rj["factors"] = json::array();
    for (const auto& f : r.factors)
      rj["factors"].push_back({{"name", f.name}, {"value", format_double17(f.value)}});
    j["records"].push_back(std::move(rj));
  }
  j["rejected"] = json::array();
  for (const auto& r : rep.rejected)
    j["rejected"].push_back({{"label", r.label}, {"theorem", r.theorem}, {"reason", r.reason}});
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

void write_content_json(const std::filesystem::path& p, const ContentEstimate& est,
                        const std::string& label) {
  json j;
  j["label"] = label;
  j["t"] = std::isfinite(est.t) ? json(format_double17(est.t)) : json("inf");
  j["upper"] = format_double17(est.upper);
  j["lower"] = format_double17(est.lower);
  j["frostman_C"] = format_double17(est.frostman_C);
  j["cover_family"] = est.cover_family;
  j["cover"] = json::array();
  for (const auto& b : est.cover)
    j["cover"].push_back({{"center", {format_double17(b.c.x), format_double17(b.c.y),
                                      format_double17(b.c.z)}},
                          {"radius", format_double17(b.r)}});
  if (const auto* am = std::get_if<AtomicMeasure>(&est.frostman.rep))
    j["frostman_atoms"] = am->atoms.size();
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

void write_sweep_svg(const std::filesystem::path& p, const std::string& title,
                     const std::vector<SweepPoint>& pts, unsigned long long seed) {
  const int W = 640, H = 420, ML = 70, MR = 20, MT = 40, MB = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto ly = [](double v) { return std::log10(std::max(v, 1e-12)); };
  for (const auto& q : pts) {
    xmin = std::min(xmin, ly(q.r));
    xmax = std::max(xmax, ly(q.r));
    for (double v : {q.lhs, q.rhs}) {
      ymin = std::min(ymin, ly(v));
      ymax = std::max(ymax, ly(v));
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymin -= 0.05 * (ymax - ymin);
  ymax += 0.05 * (ymax - ymin);
  auto X = [&](double r) { return ML + (ly(r) - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto Y = [&](double v) { return H - MB - (ly(v) - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<!-- seed=" << seed << " -->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"22\" font-family=\"monospace\" font-size=\"14\">%s "
                "(log-log: lhs blue, rhs red)</text>\n",
                ML, title.c_str());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", ML,
                H - MB, W - MR, H - MB);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", ML, MT,
                ML, H - MB);
  out << buf;
  auto polyline = [&](bool rhs, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& q : pts) {
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g ", X(q.r), Y(rhs ? q.rhs : q.lhs));
      out << buf;
    }
    out << "\"/>\n";
    for (const auto& q : pts) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"3\" fill=\"%s\"/>\n", X(q.r),
                    Y(rhs ? q.rhs : q.lhs), color);
      out << buf;
    }
  };
  polyline(false, "steelblue");
  polyline(true, "firebrick");
  for (const auto& q : pts) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.6g\" y=\"%d\" font-family=\"monospace\" font-size=\"11\" "
                  "text-anchor=\"middle\">r=%.4g</text>\n",
                  X(q.r), H - MB + 18, q.r);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"14\" y=\"%d\" font-family=\"monospace\" font-size=\"11\" "
                "transform=\"rotate(-90 14 %d)\">log10 value</text>\n",
                (H + MT) / 2, (H + MT) / 2);
  out << buf;
  out << "</svg>\n";
}

int run_verify_command(const VerifyCommandOptions& opts, CorpusReport* out_rep) {
  auto cases = load_corpus(opts.corpus);
  if (opts.resolution_override > 0)
    for (auto& c : cases) c.resolution = opts.resolution_override;
  RunOptions ro;
  ro.jobs = opts.jobs;
  ro.seed = opts.seed;
  ro.corrupt_rhs_scale = opts.corrupt_rhs_scale;
  CorpusReport rep = run_corpus(cases, ro);
  if (opts.tol_override > 0.0) {
    for (auto& r : rep.records) {
      r.tol_rel = opts.tol_override;
      r.ok = r.lhs + r.lhs_err <= r.rhs * (1.0 + r.tol_rel) + defaults::kPassAbsTol;
    }
    rep.n_ok = rep.n_violation = 0;
    for (const auto& r : rep.records) (r.ok ? rep.n_ok : rep.n_violation)++;
  }

  std::filesystem::create_directories(opts.out_dir);
  write_report_csv(opts.out_dir / "report.csv", rep);
  write_report_json(opts.out_dir / "report.json", rep);

  // one SVG per sweep case
  std::vector<std::pair<std::string, std::vector<SweepPoint>>> sweeps;
  for (const auto& r : rep.records) {
    if (std::isnan(r.sweep_r)) continue;
    const auto at = r.label.rfind("@r=");
    const std::string base = at == std::string::npos ? r.label : r.label.substr(0, at);
    auto it = std::find_if(sweeps.begin(), sweeps.end(),
                           [&](const auto& s) { return s.first == base; });
    if (it == sweeps.end()) {
      sweeps.push_back({base, {}});
      it = sweeps.end() - 1;
    }
    it->second.push_back({r.sweep_r, r.lhs, r.rhs});
  }
  for (const auto& [base, pts] : sweeps)
    write_sweep_svg(opts.out_dir / (base + ".svg"), base, pts, rep.seed);

  if (!opts.quiet) {
    std::cout << "cases: " << cases.size() << "  records: " << rep.records.size()
              << "  ok: " << rep.n_ok << "  violations: " << rep.n_violation
              << "  rejected: " << rep.rejected.size() << "\n";
    for (const auto& r : rep.records)
      std::cout << (r.ok ? "  ok " : "  VIOLATION ") << r.label
                << "  lhs=" << format_double17(r.lhs) << "  rhs=" << format_double17(r.rhs)
                << "  ratio=" << format_double17(r.ratio) << "\n";
    for (const auto& r : rep.rejected)
      std::cout << "  rejected " << r.label << " (" << r.theorem << "): " << r.reason << "\n";
  }
  if (out_rep) *out_rep = rep;
  return rep.n_violation > 0 ? 1 : 0;
}

}  // namespace potbound
