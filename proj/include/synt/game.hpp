#pragma once

#include <memory>
#include <string>
#include <vector>

#include "synt/aiger.hpp"
#include "synt/bdd.hpp"

namespace synt::game {

/// Symbolic two-player safety game built from a specification circuit.
/// States are latch valuations; the environment picks uncontrollable inputs,
/// the controller picks controllable inputs knowing them. Variable order:
/// uncontrollable inputs, controllable inputs, latches, each in file order.
struct SafetyGame {
  std::unique_ptr<bdd::Manager> manager;  // first member: outlives the handles below

  std::vector<bdd::VarId> u_vars;
  std::vector<bdd::VarId> c_vars;
  std::vector<bdd::VarId> latch_vars;

  // Defining circuit literal for every game variable (for strategy encoding).
  std::vector<aig::Literal> lit_of_var;
  std::vector<std::string> latch_names;

  std::vector<bdd::Bdd> next_fns;  // per latch, over (L, u, c)
  bdd::Bdd error_fn;               // over (L, u, c)
  bdd::Bdd init;                   // all latches zero
  unsigned spec_max_var = 0;
};

SafetyGame build_game(const aig::Circuit& spec);

/// Uncontrollable predecessor: states from which the environment forces, in
/// one step, an error or entry into `target`:
///   UPRE(S) = exists u. forall c. (error(L,u,c) or S[L <- next(L,u,c)])
/// `target` must mention latch variables only.
bdd::Bdd upre(const SafetyGame& g, const bdd::Bdd& target);

struct SolveOutcome {
  bool realizable = false;
  bdd::Bdd winning_region;    // over latch variables
  bdd::Bdd losing_attractor;  // complement of the winning region
  unsigned iterations = 0;    // fixpoint iterations until stabilization
};

/// Least fixpoint of A -> A | UPRE(A); realizable iff init stays out of it.
SolveOutcome solve(const SafetyGame& g);

}  // namespace synt::game
