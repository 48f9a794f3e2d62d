#include "synt/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace synt::oracle {

namespace {

void check_bounds(const aig::Circuit& c) {
  if (c.latches.size() > kMaxOracleLatches || c.inputs.size() > kMaxOracleInputs)
    throw std::invalid_argument("oracle size bound exceeded (max 16 latches, 16 inputs)");
}

std::vector<bool> input_vector_from_code(uint32_t code, size_t n) {
  std::vector<bool> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = (code >> i) & 1u;
  return v;
}

uint32_t state_code(const std::vector<bool>& latches) {
  uint32_t code = 0;
  for (size_t i = 0; i < latches.size(); ++i)
    if (latches[i]) code |= 1u << i;
  return code;
}

}  // namespace

GateSimulator::GateSimulator(aig::Circuit circuit) : circuit_(std::move(circuit)) {
  aig::validate(circuit_, aig::ParseMode::any_outputs);
  sorted_ands_ = circuit_.ands;
  std::sort(sorted_ands_.begin(), sorted_ands_.end(),
            [](const aig::AndGate& a, const aig::AndGate& b) { return a.lhs.var() < b.lhs.var(); });
}

std::vector<bool> GateSimulator::values_for(const std::vector<bool>& latch_state,
                                            const std::vector<bool>& inputs) const {
  if (latch_state.size() != circuit_.latches.size() || inputs.size() != circuit_.inputs.size())
    throw std::invalid_argument("simulator: wrong latch or input vector size");
  std::vector<bool> value(circuit_.max_var + 1, false);
  for (size_t i = 0; i < circuit_.inputs.size(); ++i)
    value[circuit_.inputs[i].lit.var()] = inputs[i];
  for (size_t i = 0; i < circuit_.latches.size(); ++i)
    value[circuit_.latches[i].lit.var()] = latch_state[i];
  auto lit_value = [&](aig::Literal l) { return value[l.var()] != l.negated(); };
  for (const auto& g : sorted_ands_)
    value[g.lhs.var()] = lit_value(g.rhs0) && lit_value(g.rhs1);
  return value;
}

GateSimulator::StepResult GateSimulator::step(const std::vector<bool>& latch_state,
                                              const std::vector<bool>& inputs) const {
  std::vector<bool> value = values_for(latch_state, inputs);
  auto lit_value = [&](aig::Literal l) { return value[l.var()] != l.negated(); };
  StepResult out;
  out.outputs.reserve(circuit_.outputs.size());
  for (aig::Literal o : circuit_.outputs) out.outputs.push_back(lit_value(o));
  out.next_latches.reserve(circuit_.latches.size());
  for (const auto& la : circuit_.latches) out.next_latches.push_back(lit_value(la.next));
  return out;
}

ClosedLoopSimulator::ClosedLoopSimulator(aig::Circuit solution) : sim_(std::move(solution)) {
  const aig::Circuit& c = sim_.circuit();
  for (size_t i = 0; i < c.inputs.size(); ++i)
    (c.inputs[i].controllable ? c_positions_ : u_positions_).push_back(i);
  if (c.outputs.size() != 1 + c_positions_.size())
    throw std::invalid_argument("closed loop needs one definition output per controllable input");
}

ClosedLoopSimulator::StepResult ClosedLoopSimulator::step(const std::vector<bool>& latch_state,
                                                          const std::vector<bool>& u_inputs) const {
  if (u_inputs.size() != u_positions_.size())
    throw std::invalid_argument("closed loop: wrong uncontrollable input count");
  const aig::Circuit& c = sim_.circuit();

  // First pass with controllables parked at 0 computes the definition
  // outputs; their cones do not reach controllable inputs.
  std::vector<bool> inputs(c.inputs.size(), false);
  for (size_t i = 0; i < u_positions_.size(); ++i) inputs[u_positions_[i]] = u_inputs[i];
  auto defs = sim_.step(latch_state, inputs);
  StepResult out;
  out.controllable_values.reserve(c_positions_.size());
  for (size_t i = 0; i < c_positions_.size(); ++i) {
    inputs[c_positions_[i]] = defs.outputs[1 + i];
    out.controllable_values.push_back(defs.outputs[1 + i]);
  }
  auto full = sim_.step(latch_state, inputs);
  out.error = full.outputs[0];
  out.next_latches = std::move(full.next_latches);
  return out;
}

ExplicitSolveResult explicit_solve(const aig::Circuit& spec) {
  check_bounds(spec);
  aig::validate(spec, aig::ParseMode::specification);
  GateSimulator sim(spec);

  const size_t n_latch = spec.latches.size();
  std::vector<size_t> u_pos, c_pos;
  for (size_t i = 0; i < spec.inputs.size(); ++i)
    (spec.inputs[i].controllable ? c_pos : u_pos).push_back(i);

  const uint32_t n_states = 1u << n_latch;
  const uint32_t n_u = 1u << u_pos.size();
  const uint32_t n_c = 1u << c_pos.size();

  // next[(s, full input code)] and error[...] memoized when small enough.
  auto eval = [&](uint32_t s, uint32_t u_code, uint32_t c_code) {
    std::vector<bool> inputs(spec.inputs.size());
    for (size_t i = 0; i < u_pos.size(); ++i) inputs[u_pos[i]] = (u_code >> i) & 1u;
    for (size_t i = 0; i < c_pos.size(); ++i) inputs[c_pos[i]] = (c_code >> i) & 1u;
    auto r = sim.step(input_vector_from_code(s, n_latch), inputs);
    return std::make_pair(static_cast<bool>(r.outputs[0]), state_code(r.next_latches));
  };

  std::vector<bool> lose(n_states, false);
  ExplicitSolveResult out;
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.rounds;
    for (uint32_t s = 0; s < n_states; ++s) {
      if (lose[s]) continue;
      bool env_forces = false;
      for (uint32_t u = 0; u < n_u && !env_forces; ++u) {
        bool all_c_bad = true;
        for (uint32_t c = 0; c < n_c && all_c_bad; ++c) {
          auto [err, next] = eval(s, u, c);
          if (!err && !lose[next]) all_c_bad = false;
        }
        env_forces = all_c_bad;
      }
      if (env_forces) {
        lose[s] = true;
        changed = true;
      }
    }
  }

  out.winning.resize(n_states);
  for (uint32_t s = 0; s < n_states; ++s) out.winning[s] = !lose[s];
  out.realizable = out.winning[0];
  return out;
}

namespace {

// Generic BFS over (state x input code); `arity` = number of free input bits.
template <typename StepFn>
ReachResult bfs_reach(size_t n_latch, size_t arity, StepFn&& step) {
  const uint32_t n_states = 1u << n_latch;
  const uint32_t n_inputs = 1u << arity;
  std::vector<int64_t> pred(n_states, -1);  // (prev_state << 32) | input_code
  std::vector<bool> visited(n_states, false);
  std::deque<uint32_t> queue;
  visited[0] = true;
  queue.push_back(0);

  ReachResult out;
  while (!queue.empty()) {
    uint32_t s = queue.front();
    queue.pop_front();
    for (uint32_t in = 0; in < n_inputs; ++in) {
      auto [err, next] = step(s, in);
      if (err) {
        out.error_reachable = true;
        out.final_input = input_vector_from_code(in, arity);
        for (uint32_t cur = s; pred[cur] >= 0;) {
          uint32_t in_code = static_cast<uint32_t>(pred[cur] & 0xffffffff);
          uint32_t prev = static_cast<uint32_t>(pred[cur] >> 32);
          out.steps.push_back(input_vector_from_code(in_code, arity));
          cur = prev;
        }
        std::reverse(out.steps.begin(), out.steps.end());
        return out;
      }
      if (!visited[next]) {
        visited[next] = true;
        pred[next] = (int64_t(s) << 32) | in;
        queue.push_back(next);
      }
    }
  }
  return out;
}

}  // namespace

ReachResult explicit_reach(const aig::Circuit& spec) {
  check_bounds(spec);
  GateSimulator sim(spec);
  const size_t n_latch = spec.latches.size();
  const size_t n_in = spec.inputs.size();
  return bfs_reach(n_latch, n_in, [&](uint32_t s, uint32_t in) {
    auto r = sim.step(input_vector_from_code(s, n_latch), input_vector_from_code(in, n_in));
    return std::make_pair(static_cast<bool>(r.outputs[0]), state_code(r.next_latches));
  });
}

ReachResult explicit_reach_closed(const aig::Circuit& solution) {
  check_bounds(solution);
  ClosedLoopSimulator sim(solution);
  const size_t n_latch = sim.num_latches();
  const size_t n_u = sim.num_uncontrollable();
  return bfs_reach(n_latch, n_u, [&](uint32_t s, uint32_t in) {
    auto r = sim.step(input_vector_from_code(s, n_latch), input_vector_from_code(in, n_u));
    return std::make_pair(r.error, state_code(r.next_latches));
  });
}

bool replay_raises_error(const aig::Circuit& solution,
                         const std::vector<std::vector<bool>>& steps,
                         const std::vector<bool>& final_input) {
  ClosedLoopSimulator sim(solution);
  std::vector<bool> state(sim.num_latches(), false);
  for (const auto& u : steps) {
    auto r = sim.step(state, u);
    state = std::move(r.next_latches);
  }
  return sim.step(state, final_input).error;
}

}  // namespace synt::oracle
