#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "potbound/io.hpp"

using namespace potbound;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto p = fs::temp_directory_path() / "potbound_io_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("measure parsing round trips the representations") {
  const Measure atomic = measure_from_json_text(
      R"({"type":"atomic","d":2,"atoms":[{"point":[0,0],"mass":1},{"point":[2,0],"mass":1}]})");
  CHECK(total_mass(atomic) == 2.0);

  const Measure seg = measure_from_json_text(
      R"({"type":"polyline","d":2,"vertices":[[1,0],[2,0]],"rate":0.5})");
  CHECK(total_mass(seg) == doctest::Approx(0.5));
  CHECK(seg.bounding_radius >= 2.0);

  const Measure arc = measure_from_json_text(
      R"({"type":"polyline_arc","d":2,"center":[0,0],"radius":1,"angle0":0,"angle1":1.5707963267948966,"segments":64})");
  CHECK(total_mass(arc) == doctest::Approx(M_PI / 2.0).epsilon(1e-3));

  const Measure graph = measure_from_json_text(
      R"({"type":"graph","d":2,"xs":[0,0.5,1],"ys":[0,0.5,0],"q":1})");
  CHECK(std::get<PolylineMeasure>(graph.rep).graph_slope.value() == 1.0);

  const Measure grid = measure_from_json_text(
      R"({"type":"grid_region","d":2,"cell_side":0.25,"origin":[0,0],"span":8,
          "region":{"kind":"rect","lo":[0,0],"hi":[1,1]}})");
  CHECK(total_mass(grid) == doctest::Approx(1.0));

  const Measure cantor = measure_from_json_text(
      R"({"type":"cantor","d":2,"level":6,"corner":[0,0],"extent":1})");
  CHECK(total_mass(cantor) == doctest::Approx(1.0));

  CHECK_THROWS_AS(measure_from_json_text(R"({"type":"nope"})"), ParseError);
}

TEST_CASE("function parsing: explicit charges and the rational form") {
  const DeltaSubharmonic u = function_from_json_text(
      R"({"d":2,"positive":[{"point":[0,0],"mass":2}],"negative":[{"point":[1,1],"mass":1}],"constant":0.5})");
  CHECK(u.positive.size() == 1);
  CHECK(u.negative.size() == 1);
  CHECK(u.constant == 0.5);

  const DeltaSubharmonic rat = function_from_json_text(
      R"({"d":2,"rational":{"zeros":[[0,0],[1,0]],"poles":[[3,0]],"leading":2.0}})");
  CHECK(rat.positive.size() == 2);
  CHECK(rat.negative.size() == 1);
  CHECK(rat.constant == doctest::Approx(std::log(2.0)));
}

TEST_CASE("set and gauge parsing") {
  const CompactSet S = set_from_json_text(
      R"({"d":2,"box":{"lo":[-0.125,-0.125],"size":1.25},"resolution":6,
          "primitive":{"kind":"segment","a":[0,0.5],"b":[1,0.5]}})");
  CHECK(S.k == 6);
  CHECK(!S.cells.empty());

  const Gauge g = gauge_from_json_text(R"({"kind":"power","b":2,"p":1})");
  CHECK(g(0.5) == doctest::Approx(1.0));
  const Gauge gl = gauge_from_json_text(
      R"({"kind":"power_log","b":1,"p":1.2,"q":-0.3,"domain_r":1})");
  CHECK(gl(0.0) == 0.0);
  CHECK_THROWS_AS(gauge_from_json_text(R"({"kind":"weird"})"), ParseError);
}

TEST_CASE("format_double17 round trips bit-exactly") {
  for (double v : {0.1, 1.0 / 3.0, M_PI, 2.0 * std::log(2.0) - 1.0, 1e-300, 12345.6789}) {
    const std::string s = format_double17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("verify command: reports, determinism, corruption exit path") {
  const fs::path dir = temp_dir();
  const fs::path corpus = dir / "corpus.json";
  {
    std::ofstream f(corpus);
    f << R"({"cases":[
      {"label":"curve","theorem":"COR-CURVE",
       "function":{"d":2,"positive":[{"point":[2,0],"mass":1}]},
       "measure":{"type":"polyline","d":2,"vertices":[[0,0],[1,0]]},
       "r":1,"R":3},
      {"label":"sweep","theorem":"COR-CURVE-SWEEP",
       "function":{"d":2,"positive":[{"point":[5,1],"mass":1}]},
       "measure":{"type":"graph","d":2,"xs":[0,0.5,1],"ys":[0,0.5,0],"q":1},
       "sweep":{"radii":[1,2,4],"s":{"kind":"proportional","c":1}}}
    ]})";
  }

  VerifyCommandOptions opts;
  opts.corpus = corpus;
  opts.out_dir = dir / "out1";
  opts.quiet = true;
  CorpusReport rep;
  CHECK(run_verify_command(opts, &rep) == 0);
  CHECK(rep.records.size() == 4);  // 1 + 3 sweep radii
  CHECK(rep.n_violation == 0);
  CHECK(fs::exists(opts.out_dir / "report.csv"));
  CHECK(fs::exists(opts.out_dir / "report.json"));
  CHECK(fs::exists(opts.out_dir / "sweep.svg"));

  // determinism: byte-identical canonical reports
  VerifyCommandOptions opts2 = opts;
  opts2.out_dir = dir / "out2";
  CHECK(run_verify_command(opts2) == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  CHECK(slurp(opts.out_dir / "report.json") == slurp(opts2.out_dir / "report.json"));

  // corrupted constant drives the violation exit path
  VerifyCommandOptions broken = opts;
  broken.out_dir = dir / "out3";
  broken.corrupt_rhs_scale = 1e-9;
  CHECK(run_verify_command(broken) == 1);

  CHECK_THROWS_AS(load_corpus(dir / "missing.json"), ParseError);
}

TEST_CASE("csv numbers reparse to the in-memory values") {
  const fs::path dir = temp_dir();
  const fs::path corpus = dir / "tiny.json";
  {
    std::ofstream f(corpus);
    f << R"({"cases":[{"label":"c","theorem":"COR-CURVE",
       "function":{"d":2,"positive":[{"point":[2,0],"mass":1}]},
       "measure":{"type":"polyline","d":2,"vertices":[[0,0],[1,0]]},
       "r":1,"R":3}]})";
  }
  VerifyCommandOptions opts;
  opts.corpus = corpus;
  opts.out_dir = dir / "csvout";
  opts.quiet = true;
  CorpusReport rep;
  REQUIRE(run_verify_command(opts, &rep) == 0);
  std::ifstream f(opts.out_dir / "report.csv");
  std::string line;
  std::getline(f, line);  // comment
  std::getline(f, line);  // header
  std::getline(f, line);  // the record
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) cols.push_back(tok);
  REQUIRE(cols.size() >= 7);
  CHECK(std::strtod(cols[2].c_str(), nullptr) == rep.records[0].lhs);
  CHECK(std::strtod(cols[4].c_str(), nullptr) == rep.records[0].rhs);
  CHECK(std::strtod(cols[5].c_str(), nullptr) == rep.records[0].ratio);
}
