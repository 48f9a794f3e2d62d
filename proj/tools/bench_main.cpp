#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "synt/aiger.hpp"
#include "synt/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct RefsDir {
  std::map<std::string, uint64_t> reference_sizes;
  std::map<std::string, bool> known_realizable;
  std::map<std::string, fs::path> files;
};

RefsDir load_refs(const fs::path& dir) {
  RefsDir refs;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext != ".aag" && ext != ".aig") continue;
    auto circuit = synt::aig::read_file(entry.path());
    auto meta = synt::aig::read_meta(circuit);
    std::string id = entry.path().stem().string();
    refs.files[id] = entry.path();
    if (meta.reference_size) refs.reference_sizes[id] = *meta.reference_size;
    if (meta.realizable) refs.known_realizable[id] = *meta.realizable;
  }
  return refs;
}

int cmd_run(const synt::harness::RunConfig& cfg, const fs::path& dir, const fs::path& out,
            std::optional<unsigned> sample, bool per_category) {
  auto records = synt::harness::run_benchmarks(cfg, dir, out, sample, per_category);
  unsigned answered = 0, timeouts = 0;
  for (const auto& r : records) {
    if (r.answer == synt::score::Answer::REALIZABLE ||
        r.answer == synt::score::Answer::UNREALIZABLE)
      ++answered;
    if (r.answer == synt::score::Answer::TIMEOUT) ++timeouts;
  }
  std::cout << records.size() << " benchmarks, " << answered << " answered, " << timeouts
            << " timeouts; records in " << out.string() << '\n';
  return 0;
}

int cmd_score(const fs::path& in, const std::string& refs_dir, bool write_refs,
              bool per_benchmark) {
  auto records = synt::harness::read_records(in);
  RefsDir refs;
  if (!refs_dir.empty()) {
    refs = load_refs(refs_dir);
    for (auto& r : records) {
      auto it = refs.known_realizable.find(r.benchmark);
      if (it != refs.known_realizable.end()) r.known_realizable = it->second;
    }
  }
  auto report = synt::harness::score_records(records, refs.reference_sizes);
  synt::harness::print_report(std::cout, report, per_benchmark);

  if (write_refs && !refs_dir.empty()) {
    unsigned written = 0;
    for (const auto& [bench, ref] : report.updated_references) {
      auto it = refs.files.find(bench);
      if (it == refs.files.end()) continue;
      auto circuit = synt::aig::read_file(it->second);
      auto meta = synt::aig::read_meta(circuit);
      meta.reference_size = ref;
      synt::aig::write_file(it->second, synt::aig::write_meta(circuit, meta));
      ++written;
    }
    std::cout << "updated reference sizes in " << written << " benchmark files\n";
  }
  return 0;
}

int cmd_gen(const std::string& family_str, unsigned param, const fs::path& out, uint64_t seed) {
  auto family = synt::harness::family_from_string(family_str);
  if (!family) {
    std::cerr << "error: unsupported family '" << family_str << "' (count, bitshift, add)\n";
    return 1;
  }
  auto path = synt::harness::generate_into(out, *family, param, seed);
  std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark runner, scorer and generator for AIGER safety synthesis"};
  app.require_subcommand(1);

  synt::harness::RunConfig cfg;
  std::string dir, out = "results.jsonl", mode = "sequential", in, refs_dir, family;
  unsigned param = 1;
  std::optional<unsigned> sample;
  bool per_category = false, write_refs = false, per_benchmark = false;
  uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "solve and verify every benchmark in a directory");
  run->add_option("--dir", dir, "benchmark directory (.aag/.aig files)")->required();
  run->add_option("--mode", mode, "sequential (CPU-time limit) or parallel (wall-time limit)")
      ->check(CLI::IsMember({"sequential", "parallel"}));
  run->add_option("--timeout", cfg.timeout_seconds, "per-benchmark timeout in seconds");
  run->add_option("--workers", cfg.workers, "concurrent solver processes");
  run->add_option("--mc-timeout", cfg.mc_timeout_seconds, "verification budget per solution");
  run->add_option("--config", cfg.config_name, "configuration name stored in the records");
  run->add_option("--seed", cfg.seed, "seed recorded in the run configuration");
  run->add_option("--out", out, "JSON-lines record file (appended)");
  run->add_option("--sample", sample, "keep only the first K benchmarks (sorted)");
  run->add_flag("--per-category", per_category, "apply --sample per immediate subdirectory");

  auto* score = app.add_subcommand("score", "judge, score and rank a record file");
  score->add_option("--in", in, "JSON-lines record file")->required();
  score->add_option("--refs", refs_dir, "benchmark directory carrying metadata");
  score->add_flag("--write-refs", write_refs, "write updated reference sizes back");
  score->add_flag("--per-benchmark", per_benchmark, "also print per-benchmark verdicts");

  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  gen->add_option("--family", family, "count, bitshift or add")->required();
  gen->add_option("--param", param, "size parameter (number of latches)")->required();
  gen->add_option("--out", dir, "output directory")->required();
  gen->add_option("--seed", seed, "generator seed (bitshift pattern)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cfg.mode = mode == "parallel" ? synt::harness::RunConfig::Mode::parallel
                                    : synt::harness::RunConfig::Mode::sequential;
      return cmd_run(cfg, dir, out, sample, per_category);
    }
    if (score->parsed()) return cmd_score(in, refs_dir, write_refs, per_benchmark);
    if (gen->parsed()) return cmd_gen(family, param, dir, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
