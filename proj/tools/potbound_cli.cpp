// Command-line front end: build measures/sets/functions from spec files,
// query moduli and contents, and run the verification corpus.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "potbound/io.hpp"

namespace fs = std::filesystem;
using namespace potbound;

namespace {

int cmd_modulus(const fs::path& measure_path, const std::vector<double>& ts,
                const fs::path& out_dir) {
  const Measure m = load_measure(measure_path);
  std::ostringstream table;
  table << "t,lower,upper,mode\n";
  for (double t : ts) {
    const ModulusBound mb = modulus_of_continuity(m, t);
    table << format_double17(mb.t) << ',' << format_double17(mb.lower) << ','
          << format_double17(mb.upper) << ','
          << (mb.mode == ModulusBound::Mode::Exact ? "exact" : "certified") << "\n";
  }
  std::cout << table.str();
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream f(out_dir / "modulus.csv");
    f << table.str();
  }
  return 0;
}

int cmd_content(const fs::path& set_path, const std::string& gauge_path, double p_power,
                double t, int resolution, const fs::path& out_dir) {
  CompactSet S = load_set(set_path);
  if (resolution > 0) S = at_resolution(S, resolution);
  Gauge h = power_gauge(1.0, 1.0);
  if (!gauge_path.empty()) {
    h = load_gauge(gauge_path);
  } else {
    h = power_gauge(c_p(p_power), p_power);
  }
  const SlopeResult slope = slope_s(h, Dimension(S.dim()));
  if (!slope.admissible()) {
    std::cerr << "gauge inadmissible for d = " << S.dim()
              << ": inf t h'(t)/h(t) - (d-2) <= 0, no finite slope constant s_h\n";
    return 2;
  }
  ContentEstimate est = content_upper(S, h, t);
  const ContentEstimate lo = frostman_lower(S, h);
  est.lower = lo.lower;
  est.frostman_C = lo.frostman_C;
  est.frostman = lo.frostman;
  std::cout << "set " << S.label << ": cells=" << S.cells.size() << " k=" << S.k << "\n"
            << "  upper = " << format_double17(est.upper) << "  (" << est.cover_family << ", "
            << est.cover.size() << " balls)\n"
            << "  lower = " << format_double17(est.lower)
            << "  (frostman C = " << format_double17(est.frostman_C) << ")\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_content_json(out_dir / "content.json", est, S.label);
  }
  return 0;
}

int cmd_selftest() {
  // a tiny built-in corpus: a curve corollary case and a Lebesgue case
  const char* kMeasure = R"({"type":"polyline","d":2,"vertices":[[0,0],[1,0]],"rate":1})";
  const char* kGrid = R"({"type":"grid_region","d":2,"cell_side":0.1,"origin":[-1.6,-1.6],
      "span":32,"region":{"kind":"disk","center":[0,0],"radius":1.0}})";
  const char* kFun = R"({"d":2,"positive":[{"point":[2,0],"mass":1}],"negative":[]})";

  VerificationCase curve;
  curve.label = "selftest-curve";
  curve.theorem = TheoremId::CorCurve;
  curve.U = function_from_json_text(kFun);
  curve.mu = measure_from_json_text(kMeasure);
  curve.r = 1.0;
  curve.R = 3.0;

  VerificationCase leb;
  leb.label = "selftest-leb";
  leb.theorem = TheoremId::CorLeb;
  leb.U = function_from_json_text(kFun);
  leb.mu = measure_from_json_text(kGrid);
  leb.r = 2.0;
  leb.R = 4.0;

  RunOptions ro;
  const CorpusReport clean = run_corpus({curve, leb}, ro);
  ro.corrupt_rhs_scale = 1e-9;
  const CorpusReport broken = run_corpus({curve, leb}, ro);

  const bool clean_ok = clean.n_violation == 0 && clean.records.size() == 2;
  const bool broken_detected = broken.n_violation > 0;
  std::cout << "selftest: clean run " << (clean_ok ? "ok" : "FAILED") << " ("
            << clean.n_ok << "/" << clean.records.size() << " records ok)\n";
  std::cout << "selftest: corrupted-constant run "
            << (broken_detected ? "detected (exit-1 path works)" : "NOT DETECTED")
            << " (" << broken.n_violation << " violations)\n";
  return clean_ok && broken_detected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"potential-theory integral inequality toolbox"};
  app.require_subcommand(1);

  std::string measure_path, set_path, gauge_path, corpus_path, out_dir;
  std::string t_list = "0.25,0.5,1";
  double p_power = 1.0;
  std::string t_str = "inf";
  int resolution = -1;
  int jobs = 1;
  double tol = -1.0;
  unsigned long long seed = defaults::kDefaultSeed;

  auto* mod = app.add_subcommand("modulus", "modulus of continuity table for a measure");
  mod->add_option("--measure", measure_path, "measure spec file")->required();
  mod->add_option("--t", t_list, "comma-separated radii");
  mod->add_option("--out", out_dir, "output directory");

  auto* con = app.add_subcommand("content", "certified h-content bounds for a compact set");
  con->add_option("--set", set_path, "set spec file")->required();
  con->add_option("--gauge", gauge_path, "gauge spec file");
  con->add_option("--p", p_power, "power gauge exponent (normalized c_p x^p)");
  con->add_option("--t", t_str, "cover radius (number or 'inf')");
  con->add_option("--resolution", resolution, "dyadic resolution override");
  con->add_option("--out", out_dir, "output directory");

  auto* ver = app.add_subcommand("verify", "run a verification corpus");
  ver->add_option("--corpus", corpus_path, "corpus config file")->required();
  ver->add_option("--out", out_dir, "output directory")->required();
  ver->add_option("--jobs", jobs, "parallel case workers");
  ver->add_option("--tol", tol, "pass tolerance override");
  ver->add_option("--resolution", resolution, "dyadic resolution override");
  ver->add_option("--seed", seed, "seed recorded in outputs (d>=4 fallback only)");

  app.add_subcommand("selftest", "run the built-in corpus and the corruption drill");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mod->parsed()) {
      std::vector<double> ts;
      std::stringstream ss(t_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) ts.push_back(std::stod(tok));
      }
      return cmd_modulus(measure_path, ts, out_dir);
    }
    if (con->parsed()) {
      const double t = t_str == "inf" ? std::numeric_limits<double>::infinity() : std::stod(t_str);
      return cmd_content(set_path, gauge_path, p_power, t, resolution, out_dir);
    }
    if (ver->parsed()) {
      VerifyCommandOptions opts;
      opts.corpus = corpus_path;
      opts.out_dir = out_dir;
      opts.jobs = jobs;
      opts.tol_override = tol;
      opts.resolution_override = resolution;
      opts.seed = seed;
      return run_verify_command(opts);
    }
    return cmd_selftest();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
