#include "synt/score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synt::score {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::REALIZABLE: return "REALIZABLE";
    case Answer::UNREALIZABLE: return "UNREALIZABLE";
    case Answer::UNKNOWN: return "UNKNOWN";
    case Answer::TIMEOUT: return "TIMEOUT";
  }
  return "UNKNOWN";
}

Answer answer_from_string(std::string_view s) {
  if (s == "REALIZABLE") return Answer::REALIZABLE;
  if (s == "UNREALIZABLE") return Answer::UNREALIZABLE;
  if (s == "TIMEOUT") return Answer::TIMEOUT;
  if (s == "UNKNOWN") return Answer::UNKNOWN;
  throw std::invalid_argument("unknown answer: " + std::string(s));
}

std::string_view to_string(Judgement j) {
  switch (j) {
    case Judgement::correct: return "correct";
    case Judgement::wrong: return "wrong";
    case Judgement::timeout: return "timeout";
    case Judgement::unverified: return "unverified";
  }
  return "unverified";
}

double quality(uint64_t s, uint64_t ref) {
  double q = 2.0 - std::log10((double(s) + 1.0) / (double(ref) + 1.0));
  return q < 0.0 ? 0.0 : q;
}

Judgement judge(const RawResult& entry, const std::optional<bool>& known_realizable,
                const std::vector<RawResult>& peers) {
  if (entry.answer == Answer::TIMEOUT || entry.answer == Answer::UNKNOWN)
    return Judgement::timeout;

  std::optional<bool> truth = known_realizable;
  if (!truth) {
    int votes_real = 0, votes_unreal = 0;
    for (const auto& p : peers) {
      if (p.answer == Answer::REALIZABLE) ++votes_real;
      if (p.answer == Answer::UNREALIZABLE) ++votes_unreal;
    }
    if (votes_real + votes_unreal >= 2 && votes_real != votes_unreal)
      truth = votes_real > votes_unreal;
  }
  if (!truth) return Judgement::unverified;

  bool claims_realizable = entry.answer == Answer::REALIZABLE;
  if (claims_realizable != *truth) return Judgement::wrong;
  if (claims_realizable && !entry.verified) return Judgement::unverified;
  return Judgement::correct;
}

std::map<std::string, uint64_t> update_references(
    const std::vector<RawResult>& results,
    const std::map<std::string, uint64_t>& prior) {
  std::map<std::string, uint64_t> updated = prior;
  for (const auto& r : results) {
    if (r.answer != Answer::REALIZABLE || !r.verified || !r.gate_count) continue;
    auto it = updated.find(r.benchmark);
    if (it == updated.end() || *r.gate_count < it->second)
      updated[r.benchmark] = *r.gate_count;
  }
  return updated;
}

RankingReport rank(const std::vector<RawResult>& results,
                   const std::map<std::string, uint64_t>& prior_references) {
  RankingReport report;

  // Benchmark-level facts: stored metadata and the reference used for scoring
  // (prior reference if one exists, otherwise this run's smallest verified size).
  std::map<std::string, std::optional<bool>> meta_realizable;
  std::map<std::string, std::vector<RawResult>> by_benchmark;
  for (const auto& r : results) {
    by_benchmark[r.benchmark].push_back(r);
    auto& known = meta_realizable[r.benchmark];
    if (r.known_realizable) {
      if (known && *known != *r.known_realizable)
        throw std::runtime_error("conflicting realizability metadata for " + r.benchmark);
      known = r.known_realizable;
    }
  }
  std::map<std::string, uint64_t> prior = prior_references;
  for (const auto& r : results)
    if (r.reference_size && !prior.count(r.benchmark)) prior[r.benchmark] = *r.reference_size;
  report.updated_references = update_references(results, prior);
  std::map<std::string, uint64_t> scoring_ref = prior;
  for (const auto& [bench, ref] : report.updated_references)
    if (!scoring_ref.count(bench)) scoring_ref[bench] = ref;

  std::map<std::string, ConfigurationRow> rows;
  std::map<std::string, std::vector<std::string>> solvers_of;  // benchmark -> configs correct

  for (const auto& r : results) {
    ScoreEntry e;
    e.benchmark = r.benchmark;
    e.config = r.config;
    e.s = r.gate_count;
    e.verdict = judge(r, meta_realizable[r.benchmark], by_benchmark[r.benchmark]);
    auto ref_it = scoring_ref.find(r.benchmark);
    if (ref_it != scoring_ref.end()) e.ref = ref_it->second;

    ConfigurationRow& row = rows[r.config];
    row.config = r.config;
    switch (e.verdict) {
      case Judgement::correct:
        e.points_solved = 1;
        ++row.solved;
        solvers_of[r.benchmark].push_back(r.config);
        if (r.answer == Answer::REALIZABLE && r.verified && e.s && e.ref) {
          e.points_quality = quality(*e.s, *e.ref);
          row.quality_sum += e.points_quality;
          if (e.points_quality > 2.0) ++row.new_references;
        }
        break;
      case Judgement::wrong:
        e.points_solved = kWrongAnswerPenalty;
        ++row.wrong;
        break;
      case Judgement::timeout:
        ++row.timeouts;
        break;
      case Judgement::unverified:
        break;
    }
    row.points_solved += e.points_solved;
    report.entries.push_back(std::move(e));
  }

  for (const auto& [bench, configs] : solvers_of) {
    (void)bench;
    if (configs.size() == 1) ++rows[configs.front()].unique_solved;
  }
  for (auto& [name, row] : rows) {
    (void)name;
    row.avg_quality = row.solved ? row.quality_sum / row.solved : 0.0;
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ConfigurationRow& a, const ConfigurationRow& b) {
              if (a.solved != b.solved) return a.solved > b.solved;
              if (a.quality_sum != b.quality_sum) return a.quality_sum > b.quality_sum;
              return a.config < b.config;
            });
  return report;
}

}  // namespace synt::score
