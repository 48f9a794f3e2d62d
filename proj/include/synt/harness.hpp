#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synt/aiger.hpp"
#include "synt/score.hpp"

namespace synt::harness {

// --- Benchmark generators -------------------------------------------------

enum class Family { count, bitshift, add };

std::string_view family_name(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// Deterministic benchmark generators; identical (family, n, seed) yield
/// byte-identical files. All three families are realizable by construction:
///   count    - n-bit counter the controller may hold back before the top
///              values; overflowing without permission is the error.
///   bitshift - shift register fed by the controller (the environment can
///              jam the feed to 0); presenting the forbidden pattern is the
///              error. The pattern beyond its first bit is seeded.
///   add      - accumulator stepped up by the environment and down by the
///              controller; saturating at the maximum is the error.
aig::Circuit generate(Family family, unsigned n, uint64_t seed = 0);

/// Writes `<family>_<NN>.aag` into dir and returns the path.
std::filesystem::path generate_into(const std::filesystem::path& dir, Family family,
                                    unsigned n, uint64_t seed = 0);

// --- Batch runner ----------------------------------------------------------

struct RunConfig {
  enum class Mode { sequential, parallel };
  Mode mode = Mode::sequential;
  double timeout_seconds = 3600;  // CPU time in sequential mode, wall in parallel
  unsigned workers = 1;
  double mc_timeout_seconds = 600;
  uint64_t seed = 0;
  std::string config_name = "default";
};

struct ResultRecord {
  std::string benchmark;
  std::string config;
  score::Answer answer = score::Answer::UNKNOWN;
  std::optional<uint64_t> gate_count;  // total ANDs of the solution
  double cpu_seconds = 0;
  double wall_seconds = 0;
  std::string verification = "NONE";  // verify status or NONE
  std::optional<std::string> solution_path;
  std::optional<std::string> witness_path;
  std::optional<bool> known_realizable;   // copied from benchmark metadata
  std::optional<uint64_t> reference_size; // copied from benchmark metadata
  std::optional<unsigned> iterations;     // solver fixpoint iterations
  std::string note;
};

std::string record_to_json_line(const ResultRecord& r);
ResultRecord record_from_json_line(const std::string& line);
std::vector<ResultRecord> read_records(const std::filesystem::path& jsonl);

score::RawResult to_raw_result(const ResultRecord& r);

/// In-process solve + verify of one benchmark file. Solution and witness are
/// written under artifact_dir when it is non-empty.
struct JobOutcome {
  score::Answer answer = score::Answer::UNKNOWN;
  std::optional<uint64_t> gate_count;
  std::string verification = "NONE";
  std::optional<std::string> solution_path;
  std::optional<std::string> witness_path;
  std::optional<bool> known_realizable;
  std::optional<uint64_t> reference_size;
  std::optional<unsigned> iterations;
  std::string note;
};

JobOutcome run_single(const std::filesystem::path& benchmark,
                      const std::filesystem::path& artifact_dir, double mc_timeout_seconds);

/// Runs every .aag/.aig under dir in child processes with OS-level resource
/// limits: sequential mode limits CPU time (setrlimit), parallel mode limits
/// wall time (the parent kills late jobs). Records are appended to out_jsonl
/// one line per benchmark as they complete. `sample` keeps the first K
/// benchmarks in sorted order, per immediate subdirectory when per_category
/// is set. Honors SYNTH_TMPDIR for scratch files and SYNTH_INJECT_SLEEP
/// (seconds slept in the child before solving; wall clock only).
std::vector<ResultRecord> run_benchmarks(const RunConfig& cfg,
                                         const std::filesystem::path& dir,
                                         const std::filesystem::path& out_jsonl,
                                         std::optional<unsigned> sample = std::nullopt,
                                         bool per_category = false);

// --- Scoring front end ------------------------------------------------------

score::RankingReport score_records(const std::vector<ResultRecord>& records,
                                   const std::map<std::string, uint64_t>& prior_refs = {});

void print_report(std::ostream& out, const score::RankingReport& report, bool per_benchmark);

}  // namespace synt::harness
