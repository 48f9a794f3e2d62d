#pragma once

#include <cstdint>
#include <vector>

#include "synt/aiger.hpp"

namespace synt::oracle {

/// Plain gate-level simulator over an and-inverter circuit. Deliberately
/// independent of the BDD machinery: this is the reference the symbolic
/// path is tested against.
class GateSimulator {
public:
  explicit GateSimulator(aig::Circuit circuit);

  struct StepResult {
    std::vector<bool> outputs;       // by output index
    std::vector<bool> next_latches;  // by latch declaration order
  };

  /// latch_state by latch declaration order, inputs by input declaration order.
  StepResult step(const std::vector<bool>& latch_state, const std::vector<bool>& inputs) const;

  const aig::Circuit& circuit() const { return circuit_; }

private:
  std::vector<bool> values_for(const std::vector<bool>& latch_state,
                               const std::vector<bool>& inputs) const;

  aig::Circuit circuit_;
  std::vector<aig::AndGate> sorted_ands_;  // ascending lhs = topological
};

/// Closed-loop view of a solution circuit: controllable inputs are driven by
/// their definition outputs (output 1+i defines the i-th controllable input).
class ClosedLoopSimulator {
public:
  explicit ClosedLoopSimulator(aig::Circuit solution);

  struct StepResult {
    bool error;
    std::vector<bool> next_latches;
    std::vector<bool> controllable_values;  // by controllable declaration order
  };

  StepResult step(const std::vector<bool>& latch_state,
                  const std::vector<bool>& u_inputs) const;

  size_t num_latches() const { return sim_.circuit().latches.size(); }
  size_t num_uncontrollable() const { return u_positions_.size(); }

private:
  GateSimulator sim_;
  std::vector<size_t> u_positions_;  // input vector slots of uncontrollable inputs
  std::vector<size_t> c_positions_;  // input vector slots of controllable inputs
};

inline constexpr unsigned kMaxOracleLatches = 16;
inline constexpr unsigned kMaxOracleInputs = 16;

struct ExplicitSolveResult {
  bool realizable = false;
  std::vector<bool> winning;  // indexed by latch valuation (bit i = latch i)
  unsigned rounds = 0;        // backward-induction sweeps until fixpoint
};

/// Backward induction over all latch valuations. Refuses circuits with more
/// than 16 latches or 16 inputs.
ExplicitSolveResult explicit_solve(const aig::Circuit& spec);

struct ReachResult {
  bool error_reachable = false;
  /// Input vectors driving the shortest path to a state with an erroring
  /// input; final_input is that erroring input vector (not counted as a step).
  std::vector<std::vector<bool>> steps;
  std::vector<bool> final_input;
};

/// BFS over (state x input) with every input free.
ReachResult explicit_reach(const aig::Circuit& spec);

/// BFS over the closed loop of a solution; inputs are the uncontrollable ones.
ReachResult explicit_reach_closed(const aig::Circuit& solution);

/// Replays a closed-loop trace; true iff the error output rises at the end.
bool replay_raises_error(const aig::Circuit& solution,
                         const std::vector<std::vector<bool>>& steps,
                         const std::vector<bool>& final_input);

}  // namespace synt::oracle
