#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "synt/aiger.hpp"
#include "synt/game.hpp"
#include "synt/strategy.hpp"
#include "synt/verify.hpp"

namespace {

constexpr int kExitAnswer = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIndefinite = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_realizability(const std::string& file) {
  auto spec = synt::aig::read_file(file);
  auto game = synt::game::build_game(spec);
  auto outcome = synt::game::solve(game);
  std::cout << (outcome.realizable ? "REALIZABLE" : "UNREALIZABLE") << '\n';
  return kExitAnswer;
}

int cmd_synthesize(const std::string& file, const std::string& out_path,
                   const std::string& witness_path) {
  auto spec = synt::aig::read_file(file);
  auto result = synt::strategy::synthesize(spec);
  if (!result.realizable) {
    std::cout << "UNREALIZABLE\n";
    return kExitAnswer;
  }
  synt::aig::write_file(out_path, *result.solution);
  if (!witness_path.empty()) {
    std::ofstream w(witness_path);
    if (!w) throw std::runtime_error("cannot write " + witness_path);
    w << synt::verify::witness_to_text(*result.game.manager, result.outcome.winning_region,
                                       result.game.latch_vars,
                                       synt::verify::latch_identifiers(spec));
  }
  std::cout << "REALIZABLE\n";
  std::cerr << "solution: " << out_path << " (" << result.solution->ands.size()
            << " AND gates, " << result.net.gate_count() << " added)\n";
  return kExitAnswer;
}

int cmd_verify(const std::string& spec_path, const std::string& solution_path,
               const std::string& witness_path, double mc_timeout) {
  auto spec = synt::aig::read_file(spec_path);
  auto solution = synt::aig::read_file(solution_path, synt::aig::ParseMode::any_outputs);
  std::optional<std::string> witness;
  if (!witness_path.empty()) witness = slurp(witness_path);
  auto verdict = synt::verify::verify_pipeline(spec, solution, witness, mc_timeout);
  std::cout << synt::verify::to_string(verdict.status) << '\n';
  if (!verdict.detail.empty()) std::cerr << verdict.detail << '\n';
  if (verdict.counterexample) {
    std::cerr << "counterexample trace (" << verdict.counterexample->steps.size()
              << " steps):\n";
    auto print_vec = [](const std::vector<bool>& v) {
      std::string s;
      for (bool b : v) s += b ? '1' : '0';
      return s.empty() ? std::string("-") : s;
    };
    for (const auto& step : verdict.counterexample->steps)
      std::cerr << "  " << print_vec(step) << '\n';
    std::cerr << "  " << print_vec(verdict.counterexample->final_input) << " (error)\n";
  }
  if (verdict.verified()) return kExitAnswer;
  return verdict.status == synt::verify::Status::TIMEOUT ? kExitIndefinite : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety synthesis from AIGER specifications"};
  app.require_subcommand(1);

  std::string file, out_path, witness_path, solution_path;
  double mc_timeout = 600.0;

  auto* real = app.add_subcommand("realizability", "decide realizability of a specification");
  real->add_option("file", file, "AIGER specification (.aag or .aig)")->required();

  auto* synth = app.add_subcommand("synthesize", "synthesize a controller circuit");
  synth->add_option("file", file, "AIGER specification (.aag or .aig)")->required();
  synth->add_option("-o,--out", out_path, "output AIGER solution")->required();
  synth->add_option("--witness", witness_path, "also write the winning-region witness");

  auto* verify = app.add_subcommand("verify", "check a claimed solution");
  verify->add_option("spec", file, "AIGER specification")->required();
  verify->add_option("solution", solution_path, "claimed solution")->required();
  verify->add_option("--witness", witness_path, "inductive-invariant witness file");
  verify->add_option("--mc-timeout", mc_timeout, "model checking budget in seconds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (real->parsed()) return cmd_realizability(file);
    if (synth->parsed()) return cmd_synthesize(file, out_path, witness_path);
    if (verify->parsed()) return cmd_verify(file, solution_path, witness_path, mc_timeout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
