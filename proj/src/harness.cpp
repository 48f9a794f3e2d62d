#include "synt/harness.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "synt/oracle.hpp"
#include "synt/strategy.hpp"
#include "synt/verify.hpp"

namespace synt::harness {

namespace fs = std::filesystem;
using nlohmann::json;

// --- Generators -------------------------------------------------------------

std::string_view family_name(Family f) {
  switch (f) {
    case Family::count: return "count";
    case Family::bitshift: return "bitshift";
    case Family::add: return "add";
  }
  return "count";
}

std::optional<Family> family_from_string(std::string_view s) {
  if (s == "count") return Family::count;
  if (s == "bitshift") return Family::bitshift;
  if (s == "add") return Family::add;
  return std::nullopt;
}

namespace {

// Sequentially numbers inputs and latches before any gate, so the resulting
// circuit is in the canonical contiguous-variable shape.
class Builder {
public:
  aig::Literal input(std::string name) {
    assert(circuit_.ands.empty());
    aig::Literal lit = aig::Literal::positive(next_var_++);
    bool controllable = name.rfind(aig::kControllablePrefix, 0) == 0;
    circuit_.inputs.push_back({lit, std::move(name), controllable});
    return lit;
  }

  aig::Literal latch(std::string name) {
    assert(circuit_.ands.empty());
    aig::Literal lit = aig::Literal::positive(next_var_++);
    circuit_.latches.push_back({lit, aig::kFalse, std::move(name)});
    return lit;
  }

  void next_state(aig::Literal latch_lit, aig::Literal next) {
    for (auto& la : circuit_.latches)
      if (la.lit == latch_lit) {
        la.next = next;
        return;
      }
    throw std::logic_error("next_state: unknown latch");
  }

  void output(aig::Literal lit) {
    circuit_.outputs.push_back(lit);
    circuit_.output_names.emplace_back();
  }

  aig::Literal land(aig::Literal a, aig::Literal b) {
    if (a == aig::kFalse || b == aig::kFalse) return aig::kFalse;
    if (a == aig::kTrue) return b;
    if (b == aig::kTrue) return a;
    if (a == b) return a;
    if (a == !b) return aig::kFalse;
    if (a.value() < b.value()) std::swap(a, b);
    uint64_t key = (uint64_t(a.value()) << 32) | b.value();
    auto it = gate_memo_.find(key);
    if (it != gate_memo_.end()) return it->second;
    aig::Literal lhs = aig::Literal::positive(next_var_++);
    circuit_.ands.push_back({lhs, a, b});
    gate_memo_.emplace(key, lhs);
    return lhs;
  }

  aig::Literal lor(aig::Literal a, aig::Literal b) { return !land(!a, !b); }
  aig::Literal lxor(aig::Literal a, aig::Literal b) { return lor(land(a, !b), land(!a, b)); }
  aig::Literal mux(aig::Literal sel, aig::Literal hi, aig::Literal lo) {
    return lor(land(sel, hi), land(!sel, lo));
  }

  aig::Circuit finish() {
    circuit_.max_var = next_var_ - 1;
    aig::validate(circuit_, aig::ParseMode::any_outputs);
    return std::move(circuit_);
  }

private:
  aig::Circuit circuit_;
  unsigned next_var_ = 1;
  std::unordered_map<uint64_t, aig::Literal> gate_memo_;
};

aig::Circuit gen_count(unsigned n) {
  Builder b;
  aig::Literal perm = b.input("perm");
  aig::Literal hold = b.input("controllable_hold");
  std::vector<aig::Literal> bits;
  for (unsigned i = 0; i < n; ++i) bits.push_back(b.latch("bit" + std::to_string(i)));

  // The hold input is ignored in the top n counter values; from there the
  // environment can march the counter into the overflow.
  uint64_t threshold = (uint64_t(1) << n) - n;
  aig::Literal danger = aig::kTrue;
  for (unsigned i = 0; i < n; ++i) {
    bool k = (threshold >> i) & 1;
    aig::Literal gt = k ? aig::kFalse : bits[i];
    aig::Literal eq = k ? bits[i] : !bits[i];
    danger = b.lor(gt, b.land(eq, danger));
  }

  aig::Literal increment = !b.land(hold, !danger);
  aig::Literal carry = increment;
  for (unsigned i = 0; i < n; ++i) {
    b.next_state(bits[i], b.lxor(bits[i], carry));
    carry = b.land(carry, bits[i]);
  }
  b.output(b.land(carry, !perm));  // overflow without permission
  return b.finish();
}

aig::Circuit gen_bitshift(unsigned n, uint64_t seed) {
  Builder b;
  aig::Literal jam = b.input("jam");
  aig::Literal feed = b.input("controllable_feed");
  std::vector<aig::Literal> cells;
  for (unsigned i = 0; i < n; ++i) cells.push_back(b.latch("cell" + std::to_string(i)));

  b.next_state(cells[0], b.land(feed, !jam));
  for (unsigned i = 1; i < n; ++i) b.next_state(cells[i], cells[i - 1]);

  // Forbidden pattern: first bit fixed to 1 (so the all-zero start is safe
  // and feeding zeros stays safe), the rest drawn from the seed.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  aig::Literal match = cells[0];
  for (unsigned i = 1; i < n; ++i) {
    bool p = rng() & 1;
    match = b.land(match, p ? cells[i] : !cells[i]);
  }
  b.output(match);
  return b.finish();
}

aig::Circuit gen_add(unsigned n) {
  Builder b;
  aig::Literal add = b.input("add");
  aig::Literal sub = b.input("controllable_sub");
  std::vector<aig::Literal> acc;
  for (unsigned i = 0; i < n; ++i) acc.push_back(b.latch("acc" + std::to_string(i)));

  aig::Literal nonzero = aig::kFalse;
  for (unsigned i = 0; i < n; ++i) nonzero = b.lor(nonzero, acc[i]);
  aig::Literal inc = b.land(add, !sub);
  aig::Literal dec = b.land(b.land(sub, !add), nonzero);

  aig::Literal carry = aig::kTrue;   // acc + 1
  aig::Literal borrow = aig::kTrue;  // acc - 1
  aig::Literal all_ones = aig::kTrue;
  for (unsigned i = 0; i < n; ++i) {
    aig::Literal plus = b.lxor(acc[i], carry);
    aig::Literal minus = b.lxor(acc[i], borrow);
    carry = b.land(carry, acc[i]);
    borrow = b.land(borrow, !acc[i]);
    b.next_state(acc[i], b.mux(inc, plus, b.mux(dec, minus, acc[i])));
    all_ones = b.land(all_ones, acc[i]);
  }
  b.output(all_ones);  // saturated accumulator
  return b.finish();
}

}  // namespace

aig::Circuit generate(Family family, unsigned n, uint64_t seed) {
  if (n == 0 || n > 30) throw std::invalid_argument("generator parameter must be in 1..30");
  aig::Circuit c;
  switch (family) {
    case Family::count: c = gen_count(n); break;
    case Family::bitshift: c = gen_bitshift(n, seed); break;
    case Family::add: c = gen_add(n); break;
  }
  c.comments.push_back("generator: " + std::string(family_name(family)) + " n=" +
                       std::to_string(n) + " seed=" + std::to_string(seed));
  c = aig::write_meta(std::move(c), {true, std::nullopt});

  // All families are realizable by construction; cross-check on small sizes.
  if (c.latches.size() + c.inputs.size() <= 12 && !oracle::explicit_solve(c).realizable)
    throw std::logic_error("generator produced an unrealizable instance");
  return c;
}

std::filesystem::path generate_into(const fs::path& dir, Family family, unsigned n,
                                    uint64_t seed) {
  fs::create_directories(dir);
  std::ostringstream name;
  name << family_name(family) << '_' << std::setw(2) << std::setfill('0') << n << ".aag";
  fs::path path = dir / name.str();
  aig::write_file(path, generate(family, n, seed));
  return path;
}

// --- Records ----------------------------------------------------------------

std::string record_to_json_line(const ResultRecord& r) {
  json j;
  j["benchmark"] = r.benchmark;
  j["config"] = r.config;
  j["answer"] = std::string(score::to_string(r.answer));
  if (r.gate_count) j["s"] = *r.gate_count;
  j["cpu_time"] = r.cpu_seconds;
  j["wall_time"] = r.wall_seconds;
  j["verification"] = r.verification;
  if (r.solution_path) j["solution"] = *r.solution_path;
  if (r.witness_path) j["witness"] = *r.witness_path;
  if (r.known_realizable) j["known_realizable"] = *r.known_realizable;
  if (r.reference_size) j["reference_size"] = *r.reference_size;
  if (r.iterations) j["iterations"] = *r.iterations;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

ResultRecord record_from_json_line(const std::string& line) {
  json j = json::parse(line);
  ResultRecord r;
  r.benchmark = j.at("benchmark").get<std::string>();
  r.config = j.at("config").get<std::string>();
  r.answer = score::answer_from_string(j.at("answer").get<std::string>());
  if (j.contains("s")) r.gate_count = j["s"].get<uint64_t>();
  r.cpu_seconds = j.value("cpu_time", 0.0);
  r.wall_seconds = j.value("wall_time", 0.0);
  r.verification = j.value("verification", "NONE");
  if (j.contains("solution")) r.solution_path = j["solution"].get<std::string>();
  if (j.contains("witness")) r.witness_path = j["witness"].get<std::string>();
  if (j.contains("known_realizable")) r.known_realizable = j["known_realizable"].get<bool>();
  if (j.contains("reference_size")) r.reference_size = j["reference_size"].get<uint64_t>();
  if (j.contains("iterations")) r.iterations = j["iterations"].get<unsigned>();
  r.note = j.value("note", "");
  return r;
}

std::vector<ResultRecord> read_records(const fs::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw std::runtime_error("cannot open " + jsonl.string());
  std::vector<ResultRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(jsonl.string() + ":" + std::to_string(line_no) +
                               ": malformed record: " + e.what());
    }
  }
  return out;
}

score::RawResult to_raw_result(const ResultRecord& r) {
  score::RawResult raw;
  raw.benchmark = r.benchmark;
  raw.config = r.config;
  raw.answer = r.answer;
  raw.gate_count = r.gate_count;
  raw.verified = r.verification.rfind("VERIFIED", 0) == 0;
  raw.known_realizable = r.known_realizable;
  raw.reference_size = r.reference_size;
  return raw;
}

// --- Single job -------------------------------------------------------------

JobOutcome run_single(const fs::path& benchmark, const fs::path& artifact_dir,
                      double mc_timeout_seconds) {
  JobOutcome out;
  aig::Circuit spec = aig::read_file(benchmark, aig::ParseMode::specification);
  aig::BenchmarkMeta meta = aig::read_meta(spec);
  out.known_realizable = meta.realizable;
  out.reference_size = meta.reference_size;

  auto res = strategy::synthesize(spec);
  out.iterations = res.outcome.iterations;
  if (!res.realizable) {
    out.answer = score::Answer::UNREALIZABLE;
    return out;
  }

  out.answer = score::Answer::REALIZABLE;
  out.gate_count = res.solution->ands.size();
  std::string witness =
      verify::witness_to_text(*res.game.manager, res.outcome.winning_region,
                              res.game.latch_vars, verify::latch_identifiers(spec));
  if (!artifact_dir.empty()) {
    fs::create_directories(artifact_dir);
    fs::path sol_path = artifact_dir / (benchmark.stem().string() + ".aag");
    fs::path win_path = artifact_dir / (benchmark.stem().string() + ".win");
    aig::write_file(sol_path, *res.solution);
    std::ofstream(win_path) << witness;
    out.solution_path = sol_path.string();
    out.witness_path = win_path.string();
  }
  auto verdict = verify::verify_pipeline(spec, *res.solution, witness, mc_timeout_seconds);
  out.verification = std::string(verify::to_string(verdict.status));
  if (!verdict.verified()) out.note = verdict.detail;
  return out;
}

// --- Batch runner -----------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

fs::path scratch_dir() {
  if (const char* env = std::getenv("SYNTH_TMPDIR")) return env;
  return fs::temp_directory_path();
}

std::vector<fs::path> collect_benchmarks(const fs::path& dir, std::optional<unsigned> sample,
                                         bool per_category) {
  if (!fs::is_directory(dir)) throw std::runtime_error("no such directory: " + dir.string());
  auto is_benchmark = [](const fs::path& p) {
    return p.extension() == ".aag" || p.extension() == ".aig";
  };
  std::map<std::string, std::vector<fs::path>> by_category;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_benchmark(entry.path())) continue;
    fs::path rel = fs::relative(entry.path(), dir);
    std::string category = rel.has_parent_path() ? rel.begin()->string() : "";
    by_category[per_category ? category : ""].push_back(entry.path());
  }
  std::vector<fs::path> files;
  for (auto& [cat, list] : by_category) {
    (void)cat;
    std::sort(list.begin(), list.end());
    size_t take = sample ? std::min<size_t>(*sample, list.size()) : list.size();
    files.insert(files.end(), list.begin(), list.begin() + take);
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct ActiveJob {
  pid_t pid;
  size_t index;
  Clock::time_point start;
  fs::path result_file;
  bool killed_for_timeout = false;
};

void run_child(const RunConfig& cfg, const fs::path& benchmark, const fs::path& artifact_dir,
               const fs::path& result_file) {
  if (cfg.mode == RunConfig::Mode::sequential) {
    rlim_t limit = static_cast<rlim_t>(std::ceil(std::max(cfg.timeout_seconds, 1.0)));
    struct rlimit rl{limit, limit + 1};
    setrlimit(RLIMIT_CPU, &rl);
  }
  if (const char* env = std::getenv("SYNTH_INJECT_SLEEP")) {
    double secs = std::atof(env);
    if (secs > 0) std::this_thread::sleep_for(std::chrono::duration<double>(secs));
  }

  JobOutcome out;
  try {
    out = run_single(benchmark, artifact_dir, cfg.mc_timeout_seconds);
  } catch (const std::exception& e) {
    out.answer = score::Answer::UNKNOWN;
    out.note = e.what();
  }
  ResultRecord rec;
  rec.benchmark = benchmark.stem().string();
  rec.config = cfg.config_name;
  rec.answer = out.answer;
  rec.gate_count = out.gate_count;
  rec.verification = out.verification;
  rec.solution_path = out.solution_path;
  rec.witness_path = out.witness_path;
  rec.known_realizable = out.known_realizable;
  rec.reference_size = out.reference_size;
  rec.iterations = out.iterations;
  rec.note = out.note;
  {
    std::ofstream f(result_file);
    f << record_to_json_line(rec) << '\n';
  }
  _exit(0);
}

}  // namespace

std::vector<ResultRecord> run_benchmarks(const RunConfig& cfg, const fs::path& dir,
                                         const fs::path& out_jsonl,
                                         std::optional<unsigned> sample, bool per_category) {
  std::vector<fs::path> files = collect_benchmarks(dir, sample, per_category);
  fs::path artifact_dir = out_jsonl.parent_path().empty()
                              ? fs::path("solutions")
                              : out_jsonl.parent_path() / "solutions";
  if (!out_jsonl.parent_path().empty()) fs::create_directories(out_jsonl.parent_path());
  std::ofstream record_stream(out_jsonl, std::ios::app);
  if (!record_stream) throw std::runtime_error("cannot write " + out_jsonl.string());

  std::vector<ResultRecord> records;
  auto emit = [&](ResultRecord rec) {
    record_stream << record_to_json_line(rec) << '\n';
    record_stream.flush();
    records.push_back(std::move(rec));
  };
  auto timeout_record = [&](size_t idx, double cpu, double wall) {
    ResultRecord rec;
    rec.benchmark = files[idx].stem().string();
    rec.config = cfg.config_name;
    rec.answer = score::Answer::TIMEOUT;
    rec.cpu_seconds = cpu;
    rec.wall_seconds = wall;
    return rec;
  };

  if (cfg.timeout_seconds <= 0) {
    for (size_t i = 0; i < files.size(); ++i) emit(timeout_record(i, 0, 0));
    return records;
  }

  fs::path scratch = scratch_dir();
  fs::create_directories(scratch);
  unsigned workers = std::max(1u, cfg.workers);
  std::vector<ActiveJob> active;
  size_t next_job = 0;

  while (next_job < files.size() || !active.empty()) {
    while (active.size() < workers && next_job < files.size()) {
      size_t idx = next_job++;
      fs::path result_file =
          scratch / ("synt_job_" + std::to_string(getpid()) + "_" + std::to_string(idx) + ".json");
      std::error_code ec;
      fs::remove(result_file, ec);
      pid_t pid = fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) run_child(cfg, files[idx], artifact_dir, result_file);  // never returns
      active.push_back({pid, idx, Clock::now(), result_file});
    }

    for (size_t i = 0; i < active.size();) {
      ActiveJob& job = active[i];
      int status = 0;
      struct rusage ru{};
      pid_t reaped = wait4(job.pid, &status, WNOHANG, &ru);
      if (reaped == 0) {
        double elapsed = std::chrono::duration<double>(Clock::now() - job.start).count();
        if (cfg.mode == RunConfig::Mode::parallel && elapsed > cfg.timeout_seconds &&
            !job.killed_for_timeout) {
          kill(job.pid, SIGKILL);
          job.killed_for_timeout = true;
        }
        ++i;
        continue;
      }

      double wall = std::chrono::duration<double>(Clock::now() - job.start).count();
      double cpu = double(ru.ru_utime.tv_sec) + double(ru.ru_utime.tv_usec) * 1e-6 +
                   double(ru.ru_stime.tv_sec) + double(ru.ru_stime.tv_usec) * 1e-6;
      bool cpu_exceeded = cfg.mode == RunConfig::Mode::sequential && cpu >= cfg.timeout_seconds;
      bool killed_by_limit =
          WIFSIGNALED(status) && (WTERMSIG(status) == SIGXCPU || WTERMSIG(status) == SIGKILL);

      ResultRecord rec;
      if (job.killed_for_timeout || cpu_exceeded || killed_by_limit) {
        rec = timeout_record(job.index, cpu, wall);
      } else if (WIFEXITED(status) && WEXITSTATUS(status) == 0 && fs::exists(job.result_file)) {
        std::ifstream f(job.result_file);
        std::string line;
        std::getline(f, line);
        rec = record_from_json_line(line);
        rec.cpu_seconds = cpu;
        rec.wall_seconds = wall;
      } else {
        rec.benchmark = files[job.index].stem().string();
        rec.config = cfg.config_name;
        rec.answer = score::Answer::UNKNOWN;
        rec.cpu_seconds = cpu;
        rec.wall_seconds = wall;
        rec.note = WIFSIGNALED(status)
                       ? "solver crashed with signal " + std::to_string(WTERMSIG(status))
                       : "solver exited with status " + std::to_string(WEXITSTATUS(status));
      }
      std::error_code ec;
      fs::remove(job.result_file, ec);
      emit(std::move(rec));
      active.erase(active.begin() + i);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return records;
}

// --- Scoring front end --------------------------------------------------------

score::RankingReport score_records(const std::vector<ResultRecord>& records,
                                   const std::map<std::string, uint64_t>& prior_refs) {
  std::vector<score::RawResult> raw;
  raw.reserve(records.size());
  for (const auto& r : records) raw.push_back(to_raw_result(r));
  return score::rank(raw, prior_refs);
}

void print_report(std::ostream& out, const score::RankingReport& report, bool per_benchmark) {
  out << std::left << std::setw(24) << "Configuration" << std::right << std::setw(8) << "Solved"
      << std::setw(8) << "Unique" << std::setw(7) << "Wrong" << std::setw(9) << "Timeout"
      << std::setw(9) << "Points" << std::setw(10) << "Quality" << std::setw(8) << "AvgQ"
      << std::setw(9) << "NewRefs" << '\n';
  for (const auto& row : report.rows) {
    out << std::left << std::setw(24) << row.config << std::right << std::setw(8) << row.solved
        << std::setw(8) << row.unique_solved << std::setw(7) << row.wrong << std::setw(9)
        << row.timeouts << std::setw(9) << std::fixed << std::setprecision(0) << row.points_solved
        << std::setw(10) << std::setprecision(3) << row.quality_sum << std::setw(8)
        << row.avg_quality << std::setw(9) << row.new_references << '\n';
  }
  if (per_benchmark) {
    out << "\nPer-benchmark verdicts:\n";
    for (const auto& e : report.entries) {
      out << "  " << std::left << std::setw(24) << e.benchmark << std::setw(18) << e.config
          << std::setw(12) << score::to_string(e.verdict);
      if (e.s) out << " s=" << *e.s;
      if (e.ref) out << " ref=" << *e.ref;
      if (e.points_quality > 0)
        out << " q=" << std::fixed << std::setprecision(3) << e.points_quality;
      out << '\n';
    }
  }
  if (!report.updated_references.empty()) {
    out << "\nUpdated reference sizes:\n";
    for (const auto& [bench, ref] : report.updated_references)
      out << "  " << std::left << std::setw(24) << bench << ref << '\n';
  }
}

}  // namespace synt::harness
