#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synt::score {

enum class Answer { REALIZABLE, UNREALIZABLE, UNKNOWN, TIMEOUT };

std::string_view to_string(Answer a);
Answer answer_from_string(std::string_view s);

/// Quality of a solution of size s against reference size ref:
///   2 - log10((s+1)/(ref+1)), clamped below at 0.
/// The +1 shift keeps gate-free solutions meaningful; there is no upper clamp.
double quality(uint64_t s, uint64_t ref);

inline constexpr double kWrongAnswerPenalty = -4.0;

enum class Judgement { correct, wrong, timeout, unverified };

std::string_view to_string(Judgement j);

/// One configuration's raw answer on one benchmark, as recorded by the runner.
struct RawResult {
  std::string benchmark;
  std::string config;
  Answer answer = Answer::UNKNOWN;
  std::optional<uint64_t> gate_count;    // total AND count of the solution
  bool verified = false;                 // solution passed verification
  std::optional<bool> known_realizable;  // metadata stored with the benchmark
  std::optional<uint64_t> reference_size;
};

/// Ground truth comes from the stored realizability metadata when present,
/// otherwise from a strict majority of the peers' definite answers (at least
/// two respondents; ties and lone answers establish nothing). A realizable
/// claim is only `correct` with a verified solution.
Judgement judge(const RawResult& entry, const std::optional<bool>& known_realizable,
                const std::vector<RawResult>& peers);

/// Per-benchmark minimum of prior reference and this run's best verified size.
std::map<std::string, uint64_t> update_references(
    const std::vector<RawResult>& results,
    const std::map<std::string, uint64_t>& prior);

struct ScoreEntry {
  std::string benchmark;
  std::string config;
  Judgement verdict = Judgement::unverified;
  std::optional<uint64_t> s;
  std::optional<uint64_t> ref;
  double points_solved = 0;
  double points_quality = 0;  // only verified realizable correct answers
};

struct ConfigurationRow {
  std::string config;
  unsigned solved = 0;
  unsigned wrong = 0;
  unsigned timeouts = 0;
  unsigned unique_solved = 0;    // correct where no other configuration is
  unsigned new_references = 0;   // solutions with quality > 2
  double points_solved = 0;
  double quality_sum = 0;
  double avg_quality = 0;        // quality_sum / solved
};

struct RankingReport {
  std::vector<ScoreEntry> entries;
  std::vector<ConfigurationRow> rows;  // sorted: solved desc, quality desc, name
  std::map<std::string, uint64_t> updated_references;
};

/// Judges every result against metadata/majority, scores solutions against
/// the prior references (falling back to this run's best where none exist),
/// and aggregates the two competition rankings.
RankingReport rank(const std::vector<RawResult>& results,
                   const std::map<std::string, uint64_t>& prior_references = {});

}  // namespace synt::score
