#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synt/aiger.hpp"
#include "synt/bdd.hpp"

namespace synt::verify {

enum class Status {
  VERIFIED_INVARIANT,
  VERIFIED_MODEL_CHECK,
  SYNTACTIC_FAIL,
  SEMANTIC_FAIL,
  TIMEOUT,
};

std::string_view to_string(Status s);

struct Counterexample {
  std::vector<std::vector<bool>> steps;  // uncontrollable inputs driving transitions
  std::vector<bool> final_input;         // uncontrollable input that raises the error
};

struct Verdict {
  Status status;
  std::optional<Counterexample> counterexample;  // present iff SEMANTIC_FAIL
  unsigned iterations = 0;
  size_t bdd_nodes = 0;
  double wall_seconds = 0;
  std::string detail;
  bool verified() const {
    return status == Status::VERIFIED_INVARIANT || status == Status::VERIFIED_MODEL_CHECK;
  }
};

/// Symbolic closed loop of a solution circuit: controllable inputs replaced
/// by their definition outputs, so error and next-state functions range over
/// (latches, uncontrollable inputs). Shadow variables for the next state are
/// interleaved with their latch variables.
struct ClosedLoop {
  std::unique_ptr<bdd::Manager> manager;
  std::vector<bdd::VarId> u_vars;
  std::vector<bdd::VarId> latch_vars;
  std::vector<bdd::VarId> shadow_vars;  // aligned with latch_vars
  std::vector<std::string> latch_ids;
  std::vector<bdd::Bdd> next_fns;  // over (L, u)
  bdd::Bdd error_fn;               // over (L, u)
  bdd::Bdd init;
};

ClosedLoop build_closed_loop(const aig::Circuit& solution);

struct InvariantCheck {
  bool pass = false;
  int failed_clause = 0;  // 1 init containment, 2 error overlap, 3 inductiveness
  std::string detail;
};

/// region must mention only latch variables of the closed loop.
InvariantCheck check_invariant(const ClosedLoop& cl, const bdd::Bdd& region);

/// Forward reachability over the closed loop; SEMANTIC_FAIL comes with a
/// replayable input trace extracted from the stored frontier sequence.
Verdict model_check(const ClosedLoop& cl, double budget_seconds);

/// Syntactic check, then the witness-based invariant check if a witness is
/// given, then model checking if no witness exists or the invariant check
/// was inconclusive. A failed invariant check alone never rejects.
Verdict verify_pipeline(const aig::Circuit& spec, const aig::Circuit& solution,
                        const std::optional<std::string>& witness_text,
                        double mc_budget_seconds = 600.0);

// --- Witness file format -------------------------------------------------
//
//   WINNING_REGION
//   latches <id> <id> ...
//   <cube lines, one character per latch column: -, 0 or 1>
//
// The latch header makes the cube list order-independent; `true`/`false`
// lines denote constant regions (needed for latch-free circuits). An empty
// cube list is the empty region.

class WitnessError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stable identifiers for a circuit's latches: symbol names when they are
/// unique and whitespace-free, positional ids l0, l1, ... otherwise.
std::vector<std::string> latch_identifiers(const aig::Circuit& c);

std::string witness_to_text(bdd::Manager& mgr, const bdd::Bdd& region,
                            const std::vector<bdd::VarId>& latch_vars,
                            const std::vector<std::string>& latch_ids);

bdd::Bdd parse_witness(const std::string& text, bdd::Manager& mgr,
                       const std::vector<bdd::VarId>& latch_vars,
                       const std::vector<std::string>& latch_ids);

}  // namespace synt::verify
