#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "synt/aiger.hpp"
#include "synt/bdd.hpp"
#include "synt/game.hpp"

namespace synt::strategy {

/// All controllable choices that keep the play winning:
///   relation = !W(L) | (!error(L,u,c) & W[L <- next(L,u,c)])
/// Outside W every choice is allowed (those states are don't-care).
struct PermissiveStrategy {
  bdd::Bdd relation;
};

PermissiveStrategy permissive_strategy(const game::SafetyGame& g, const game::SolveOutcome& out);

/// Determinizes the permissive relation, one controllable variable at a time
/// in declaration order. For each variable the positive/negative cofactors P
/// and N (later controllables quantified away) bound the choice; on the
/// don't-care overlap the smaller of "constant 0" and a restrict-simplified
/// cofactor wins, ties toward 0.
std::vector<std::pair<bdd::VarId, bdd::Bdd>> resolve(const game::SafetyGame& g,
                                                     const PermissiveStrategy& p);

struct StrategyNet {
  std::vector<std::pair<aig::Literal, aig::Literal>> defs;  // controllable input -> definition
  std::vector<aig::AndGate> new_ands;
  size_t gate_count() const { return new_ands.size(); }
};

/// Encodes the resolved functions as AND gates appended after the
/// specification's variable range. Shared BDD nodes are encoded once;
/// negations ride on literal parity and cost nothing.
StrategyNet encode_circuit(const game::SafetyGame& g,
                           const std::vector<std::pair<bdd::VarId, bdd::Bdd>>& fns);

struct SynthesisResult {
  bool realizable = false;
  game::SafetyGame game;
  game::SolveOutcome outcome;
  std::optional<aig::Circuit> solution;
  StrategyNet net;
};

/// Full pipeline: build -> solve -> extract -> encode -> merge.
SynthesisResult synthesize(const aig::Circuit& spec);

}  // namespace synt::strategy
