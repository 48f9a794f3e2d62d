// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support/random_circuit.hpp"
#include "support/truth_table.hpp"
#include "synt/aiger.hpp"
#include "synt/bdd.hpp"
#include "synt/game.hpp"
#include "synt/harness.hpp"
#include "synt/oracle.hpp"
#include "synt/score.hpp"
#include "synt/strategy.hpp"
#include "synt/verify.hpp"

using namespace synt;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& note = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
  if (!note.empty()) std::cout << " (" << note << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

struct Corpus {
  std::vector<aig::Circuit> specs;
};

Corpus build_corpus() {
  Corpus corpus;
  std::mt19937_64 rng(20170731);
  for (int i = 0; i < 500; ++i) corpus.specs.push_back(test_support::random_spec(rng));
  for (auto family : {harness::Family::count, harness::Family::bitshift, harness::Family::add})
    for (unsigned n = 1; n <= 4; ++n)
      corpus.specs.push_back(harness::generate(family, n, 20170731 + n));
  return corpus;
}

// ---- criterion 1: quality formula anchors and the wrong-answer penalty ----
void criterion1() {
  const double eps = 1e-9;
  bool ok = true;
  ok &= std::fabs(score::quality(7, 7) - 2.0) < eps;
  ok &= std::fabs(score::quality(0, 0) - 2.0) < eps;
  ok &= std::fabs(score::quality(49, 4) - 1.0) < eps;   // (s+1) = 10 (ref+1)
  ok &= std::fabs(score::quality(4, 49) - 3.0) < eps;   // (s+1) = (ref+1)/10
  ok &= std::fabs(score::quality(999, 0) - 0.0) < eps;  // 1000x bigger: clamped at 0
  ok &= std::fabs(score::quality(100 * 8 + 7, 7) - 0.0) < eps;  // exactly 100x: still 0

  // one wrong answer contributes exactly -4 solved points
  std::vector<score::RawResult> rs{
      {"b", "A", score::Answer::REALIZABLE, 3, true, false, std::nullopt}};
  auto rep = score::rank(rs);
  ok &= rep.rows.size() == 1 && std::fabs(rep.rows[0].points_solved + 4.0) < eps;
  report(1, "quality-formula anchors and -4 penalty", ok);
}

// ---- criterion 2: symbolic solver equals the explicit oracle ----
std::vector<oracle::ExplicitSolveResult> oracle_results;

void criterion2(const Corpus& corpus) {
  auto t0 = std::chrono::steady_clock::now();
  size_t mismatches = 0;
  oracle_results.clear();
  for (const auto& spec : corpus.specs) {
    auto ref = oracle::explicit_solve(spec);
    oracle_results.push_back(ref);
    auto g = game::build_game(spec);
    auto out = game::solve(g);
    bool ok = out.realizable == ref.realizable;
    unsigned n_latch = static_cast<unsigned>(g.latch_vars.size());
    for (uint32_t s = 0; ok && s < (1u << n_latch); ++s) {
      std::vector<bool> by_var(g.manager->num_vars(), false);
      for (unsigned i = 0; i < n_latch; ++i) by_var[g.latch_vars[i]] = (s >> i) & 1u;
      ok = g.manager->eval(out.winning_region, by_var) == ref.winning[s];
    }
    if (!ok) ++mismatches;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream note;
  note << corpus.specs.size() << " instances, " << mismatches << " mismatches, " << std::fixed
       << std::setprecision(1) << secs << "s";
  report(2, "oracle equivalence of realizability and winning regions",
         mismatches == 0 && secs < 300.0, note.str());
}

// ---- criterion 3: every synthesized solution verifies everywhere ----
std::vector<std::pair<aig::Circuit, aig::Circuit>> verified_pairs;  // (spec, solution)

void criterion3(const Corpus& corpus) {
  size_t realizable = 0, bad = 0;
  verified_pairs.clear();
  for (size_t i = 0; i < corpus.specs.size(); ++i) {
    if (!oracle_results[i].realizable) continue;
    ++realizable;
    const auto& spec = corpus.specs[i];
    auto res = strategy::synthesize(spec);
    bool ok = res.realizable && res.solution.has_value();
    if (ok) {
      std::string witness = verify::witness_to_text(
          *res.game.manager, res.outcome.winning_region, res.game.latch_vars,
          verify::latch_identifiers(spec));
      ok = aig::check_syntactic(spec, *res.solution).pass();
      if (ok) {
        auto cl = verify::build_closed_loop(*res.solution);
        auto region = verify::parse_witness(witness, *cl.manager, cl.latch_vars, cl.latch_ids);
        ok = verify::check_invariant(cl, region).pass;
        ok = ok && verify::model_check(cl, 60.0).status == verify::Status::VERIFIED_MODEL_CHECK;
      }
      ok = ok && !oracle::explicit_reach_closed(*res.solution).error_reachable;
    }
    if (!ok) ++bad;
    else verified_pairs.emplace_back(spec, *res.solution);
  }
  std::ostringstream note;
  note << realizable << " realizable instances, " << bad << " failures";
  report(3, "self-verification of synthesized solutions", bad == 0 && realizable > 0, note.str());
}

// ---- criterion 4: BDD algebra suite ----
void criterion4() {
  using namespace test_support;
  const unsigned n = 6;
  bool ok = true;
  bdd::Manager m(n);
  std::mt19937_64 rng(414243);

  // canonicity on 10,000 random pairs (two construction routes) and ite
  // against the exhaustive table on the same triples
  for (int i = 0; ok && i < 10000; ++i) {
    uint64_t ta = random_tt(rng, n);
    uint64_t tb = (i % 4 == 0) ? ta : random_tt(rng, n);
    uint64_t tc = random_tt(rng, n);
    bdd::Bdd a = bdd_from_tt_shannon(m, ta, n);
    bdd::Bdd b = bdd_from_tt_minterms(m, tb, n);
    bdd::Bdd c = bdd_from_tt_shannon(m, tc, n);
    ok = (a == b) == (ta == tb);
    ok = ok && tt_of_bdd(m, m.ite(a, b, c), n) == tt_ite(ta, tb, tc, n);
  }
  // quantifier duality as handle equality + compose vs substitution
  for (int i = 0; ok && i < 500; ++i) {
    uint64_t tf = random_tt(rng, n);
    bdd::Bdd f = bdd_from_tt_shannon(m, tf, n);
    std::vector<bdd::VarId> vars{static_cast<bdd::VarId>(rng() % n),
                                 static_cast<bdd::VarId>(rng() % n)};
    if (vars[0] == vars[1]) vars.pop_back();
    ok = m.forall(f, vars) == !m.exists(!f, vars);
    if (!ok) break;
    std::vector<uint64_t> subst_tt(n);
    std::vector<std::pair<bdd::VarId, bdd::Bdd>> subst;
    for (unsigned v = 0; v < n; ++v) {
      if (rng() & 1) {
        subst_tt[v] = random_tt(rng, n);
        subst.emplace_back(v, bdd_from_tt_shannon(m, subst_tt[v], n));
      } else {
        subst_tt[v] = tt_var(v, n);
      }
    }
    ok = tt_of_bdd(m, m.compose(f, subst), n) == tt_compose(tf, subst_tt, n);
  }
  // reordering preserves evaluation on 100 random functions
  {
    bdd::Manager mr(n);
    std::vector<bdd::Bdd> fns;
    std::vector<uint64_t> tts;
    for (int i = 0; i < 100; ++i) {
      tts.push_back(random_tt(rng, n));
      fns.push_back(bdd_from_tt_shannon(mr, tts.back(), n));
    }
    auto stats = mr.sift_reorder();
    ok = ok && stats.nodes_after <= stats.nodes_before;
    for (size_t i = 0; ok && i < fns.size(); ++i) ok = tt_of_bdd(mr, fns[i], n) == tts[i];
  }
  report(4, "BDD algebra suite (canonicity, duality, compose, reorder)", ok);
}

// ---- criterion 5: AIGER codec ----
void criterion5() {
  std::mt19937_64 rng(515253);
  bool ok = true;
  for (int i = 0; ok && i < 500; ++i) {
    aig::Circuit c = test_support::random_spec(rng);
    ok = aig::parse_ascii(aig::serialize_ascii(c)) == c;
  }
  for (int i = 0; ok && i < 200; ++i) {
    aig::Circuit c = test_support::random_spec(rng);
    ok = aig::parse_binary(test_support::reference_binary_encode(c)) ==
         aig::parse_ascii(aig::serialize_ascii(c));
  }
  for (int i = 0; ok && i < 200; ++i) {
    aig::Circuit c = test_support::random_spec(rng);
    std::string text = aig::serialize_ascii(c);
    auto reference = test_support::mini_parse_inputs(text);
    aig::Circuit parsed = aig::parse_ascii(text);
    ok = parsed.inputs.size() == reference.size();
    for (size_t k = 0; ok && k < reference.size(); ++k)
      ok = parsed.inputs[k].lit.value() == reference[k].first &&
           parsed.inputs[k].controllable == reference[k].second;
  }
  report(5, "AIGER codec round trips and controllable partition", ok);
}

// ---- criterion 6: mutation testing of the verifier ----
void criterion6() {
  std::mt19937_64 rng(616263);
  size_t mutants = 0, unsafe_mutants = 0, unsound = 0, missing_trace = 0;
  for (const auto& [spec, solution] : verified_pairs) {
    if (solution.outputs.size() < 2) continue;  // no controllables to tamper with
    for (int round = 0; round < 2 && mutants < 80; ++round) {
      aig::Circuit mutant = solution;
      std::vector<aig::Literal> pool{aig::kFalse, aig::kTrue};
      for (const auto& in : mutant.inputs)
        if (!in.controllable) pool.push_back(in.lit);
      for (const auto& la : mutant.latches) pool.push_back(la.lit);

      size_t extra_gates = mutant.ands.size() - spec.ands.size();
      bool rewire_gate = extra_gates > 0 && (rng() & 1);
      if (rewire_gate) {
        // rewire one operand of a strategy gate (spec gates must stay intact)
        size_t gi = spec.ands.size() + rng() % extra_gates;
        for (size_t j = spec.ands.size(); j < gi; ++j) pool.push_back(mutant.ands[j].lhs);
        aig::Literal pick = pool[rng() % pool.size()];
        if (rng() & 1) pick = !pick;
        auto& gate = mutant.ands[gi];
        if (rng() & 1) gate.rhs0 = pick; else gate.rhs1 = pick;
        if (gate.rhs0.value() < gate.rhs1.value()) std::swap(gate.rhs0, gate.rhs1);
      } else {
        size_t which = 1 + rng() % (mutant.outputs.size() - 1);
        aig::Literal pick = pool[rng() % pool.size()];
        if (rng() & 1) pick = !pick;
        if (mutant.outputs[which] == pick) pick = !pick;
        mutant.outputs[which] = pick;
      }
      if (mutant == solution) continue;
      ++mutants;

      bool unsafe = oracle::explicit_reach_closed(mutant).error_reachable;
      auto verdict = verify::verify_pipeline(spec, mutant, std::nullopt, 60.0);
      if (unsafe) {
        ++unsafe_mutants;
        if (verdict.verified()) ++unsound;
        if (verdict.status == verify::Status::SEMANTIC_FAIL) {
          if (!verdict.counterexample ||
              !oracle::replay_raises_error(mutant, verdict.counterexample->steps,
                                           verdict.counterexample->final_input))
            ++missing_trace;
        } else {
          ++missing_trace;
        }
      }
    }
  }
  std::ostringstream note;
  note << mutants << " mutants, " << unsafe_mutants << " unsafe, " << unsound
       << " unsound verdicts, " << missing_trace << " bad traces";
  report(6, "mutation verification soundness",
         mutants >= 50 && unsafe_mutants > 0 && unsound == 0 && missing_trace == 0, note.str());
}

// ---- criterion 7: harness timeout semantics and scoring tables ----
void criterion7() {
  bool ok = true;
  std::string note;

  // timeout semantics via sleep injection
  {
    fs::path dir = fs::temp_directory_path() / ("aigsynt_acc_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    harness::generate_into(dir / "bench", harness::Family::count, 2, 0);
    setenv("SYNTH_INJECT_SLEEP", "2", 1);
    harness::RunConfig cfg;
    cfg.timeout_seconds = 1;
    cfg.mode = harness::RunConfig::Mode::sequential;
    auto seq = harness::run_benchmarks(cfg, dir / "bench", dir / "seq.jsonl");
    ok &= seq.size() == 1 && seq[0].answer == score::Answer::REALIZABLE;
    if (!ok) note = "sequential run was killed by a wall clock";
    cfg.mode = harness::RunConfig::Mode::parallel;
    auto par = harness::run_benchmarks(cfg, dir / "bench", dir / "par.jsonl");
    bool par_ok = par.size() == 1 && par[0].answer == score::Answer::TIMEOUT;
    if (!par_ok) note = "parallel run escaped the wall-clock limit";
    ok &= par_ok;
    unsetenv("SYNTH_INJECT_SLEEP");
    fs::remove_all(dir);
  }

  // hand-computed 3-configuration x 6-benchmark table
  {
    using score::Answer;
    auto r = [](std::string b, std::string c, Answer a, std::optional<uint64_t> s, bool v,
                std::optional<bool> known, std::optional<uint64_t> ref) {
      return score::RawResult{std::move(b), std::move(c), a, s, v, known, ref};
    };
    std::vector<score::RawResult> rs{
        r("b1", "A", Answer::REALIZABLE, 9, true, true, 9),
        r("b1", "B", Answer::REALIZABLE, 99, true, true, 9),
        r("b1", "C", Answer::TIMEOUT, std::nullopt, false, true, 9),
        r("b2", "A", Answer::UNREALIZABLE, std::nullopt, false, false, std::nullopt),
        r("b2", "B", Answer::REALIZABLE, 5, false, false, std::nullopt),
        r("b2", "C", Answer::UNREALIZABLE, std::nullopt, false, false, std::nullopt),
        r("b3", "A", Answer::REALIZABLE, 0, true, std::nullopt, std::nullopt),
        r("b3", "B", Answer::REALIZABLE, 4, true, std::nullopt, std::nullopt),
        r("b3", "C", Answer::UNREALIZABLE, std::nullopt, false, std::nullopt, std::nullopt),
        r("b4", "A", Answer::REALIZABLE, 2, false, std::nullopt, std::nullopt),
        r("b4", "B", Answer::UNREALIZABLE, std::nullopt, false, std::nullopt, std::nullopt),
        r("b5", "A", Answer::REALIZABLE, 2, true, true, 4),
        r("b5", "B", Answer::TIMEOUT, std::nullopt, false, true, 4),
        r("b5", "C", Answer::TIMEOUT, std::nullopt, false, true, 4),
        r("b6", "A", Answer::TIMEOUT, std::nullopt, false, true, std::nullopt),
        r("b6", "B", Answer::REALIZABLE, 7, true, true, std::nullopt),
        r("b6", "C", Answer::REALIZABLE, 9, true, true, std::nullopt),
    };
    auto rep = score::rank(rs);
    const double eps = 1e-9;
    const double qb3_b = 2.0 - std::log10(5.0);
    const double qb5_a = 2.0 - std::log10(3.0 / 5.0);
    const double qb6_c = 2.0 - std::log10(10.0 / 8.0);
    auto row = [&](const std::string& name) {
      for (const auto& r2 : rep.rows)
        if (r2.config == name) return r2;
      return score::ConfigurationRow{};
    };
    auto a = row("A"), b = row("B"), c = row("C");
    bool table_ok =
        a.solved == 4 && std::fabs(a.points_solved - 4.0) < eps &&
        std::fabs(a.quality_sum - (4.0 + qb5_a)) < eps && a.unique_solved == 1 &&
        a.new_references == 1 && std::fabs(a.avg_quality - (4.0 + qb5_a) / 4) < eps &&
        b.solved == 3 && std::fabs(b.points_solved + 1.0) < eps &&
        std::fabs(b.quality_sum - (3.0 + qb3_b)) < eps && b.unique_solved == 0 &&
        c.solved == 2 && std::fabs(c.points_solved + 2.0) < eps &&
        std::fabs(c.quality_sum - qb6_c) < eps &&
        rep.updated_references ==
            std::map<std::string, uint64_t>{{"b1", 9}, {"b3", 0}, {"b5", 2}, {"b6", 7}};
    if (!table_ok) note = "score table mismatch";
    ok &= table_ok;
  }
  report(7, "harness timeout semantics and scoring tables", ok, note);
}

// ---- criterion 8: performance smoke on a 20-latch counter ----
void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  const unsigned n = 20;
  aig::Circuit spec = harness::generate(harness::Family::count, n, 0);
  auto res = strategy::synthesize(spec);
  bool ok = res.realizable;
  unsigned iterations = res.outcome.iterations;
  if (ok) {
    std::string witness = verify::witness_to_text(
        *res.game.manager, res.outcome.winning_region, res.game.latch_vars,
        verify::latch_identifiers(spec));
    auto verdict = verify::verify_pipeline(spec, *res.solution, witness, 30.0);
    ok = verdict.verified();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 30.0;
  ok = ok && iterations <= n + 2;  // observed n+1, far below the 2^n bound
  std::ostringstream note;
  note << "iterations=" << iterations << " (bound " << (1u << n) << "), " << std::fixed
       << std::setprecision(2) << secs << "s";
  report(8, "20-latch counter solved and verified under 30s", ok, note.str());
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  criterion1();
  Corpus corpus = build_corpus();
  criterion2(corpus);
  criterion3(corpus);
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << std::endl;
  return failures;
}
