#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "potbound/compact_set.hpp"
#include "potbound/verify.hpp"

namespace potbound {

// Thrown on malformed spec files; the CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spec-file loaders (JSON; schemas documented in docs/formats.md).
Measure load_measure(const std::filesystem::path& p);
DeltaSubharmonic load_function(const std::filesystem::path& p);
CompactSet load_set(const std::filesystem::path& p);
Gauge load_gauge(const std::filesystem::path& p);
std::vector<VerificationCase> load_corpus(const std::filesystem::path& p);

// Inline (string) variants, used by tests and embedded corpora.
Measure measure_from_json_text(const std::string& text);
DeltaSubharmonic function_from_json_text(const std::string& text);
CompactSet set_from_json_text(const std::string& text);
Gauge gauge_from_json_text(const std::string& text);

// 17-significant-digit formatting; every written number reparses bit-equal.
std::string format_double17(double v);

void write_report_csv(const std::filesystem::path& p, const CorpusReport& rep);
// canonical record (no timings): compared byte-for-byte by the determinism check
void write_report_json(const std::filesystem::path& p, const CorpusReport& rep);
void write_content_json(const std::filesystem::path& p, const ContentEstimate& est,
                        const std::string& label);

struct SweepPoint {
  double r, lhs, rhs;
};
void write_sweep_svg(const std::filesystem::path& p, const std::string& title,
                     const std::vector<SweepPoint>& pts, unsigned long long seed);

struct VerifyCommandOptions {
  std::filesystem::path corpus;
  std::filesystem::path out_dir;
  int jobs = 1;
  double tol_override = -1.0;        // < 0: keep default
  int resolution_override = -1;      // < 0: keep per-case values
  unsigned long long seed = defaults::kDefaultSeed;
  double corrupt_rhs_scale = 1.0;
  bool quiet = false;
};

// Runs the corpus and writes report.csv, report.json and one SVG per sweep
// case. Returns 0 (all ok), or 1 (at least one violation).
int run_verify_command(const VerifyCommandOptions& opts, CorpusReport* out = nullptr);

}  // namespace potbound
