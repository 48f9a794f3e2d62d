#include "synt/strategy.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace synt::strategy {

PermissiveStrategy permissive_strategy(const game::SafetyGame& g, const game::SolveOutcome& out) {
  if (!out.realizable) throw std::logic_error("no strategy for an unrealizable game");
  std::vector<std::pair<bdd::VarId, bdd::Bdd>> subst;
  for (size_t i = 0; i < g.latch_vars.size(); ++i)
    subst.emplace_back(g.latch_vars[i], g.next_fns[i]);
  bdd::Bdd stays_winning = g.manager->compose(out.winning_region, subst);
  return {(!out.winning_region) | ((!g.error_fn) & stays_winning)};
}

std::vector<std::pair<bdd::VarId, bdd::Bdd>> resolve(const game::SafetyGame& g,
                                                     const PermissiveStrategy& p) {
  bdd::Manager& mgr = *g.manager;
  // Wherever any choice exists now, the resolved choices must still work.
  bdd::Bdd feasible = mgr.exists(p.relation, g.c_vars);

  bdd::Bdd relation = p.relation;
  std::vector<std::pair<bdd::VarId, bdd::Bdd>> out;
  out.reserve(g.c_vars.size());
  for (size_t i = 0; i < g.c_vars.size(); ++i) {
    bdd::VarId ci = g.c_vars[i];
    std::span<const bdd::VarId> later(g.c_vars.data() + i + 1, g.c_vars.size() - i - 1);
    bdd::Bdd pos = mgr.exists(mgr.compose(relation, {{ci, mgr.constant(true)}}), later);
    bdd::Bdd neg = mgr.exists(mgr.compose(relation, {{ci, mgr.constant(false)}}), later);

    bdd::Bdd zero_biased = pos & !neg;  // choose 1 only where forced
    bdd::Bdd simplified = mgr.restrict_to(pos, pos | neg);
    bdd::Bdd choice = mgr.node_count(simplified) < mgr.node_count(zero_biased)
                          ? simplified
                          : zero_biased;
    out.emplace_back(ci, choice);
    relation = mgr.compose(relation, {{ci, choice}});
  }

  if (!feasible.implies(relation).is_true())
    throw std::logic_error("resolution lost a winning choice (solver bug)");
  return out;
}

namespace {

// Structural encoder: builds AND gates over the circuit literals of the game
// variables, memoizing both BDD nodes and gate operand pairs.
class GateEncoder {
public:
  GateEncoder(const game::SafetyGame& g, unsigned first_fresh_var)
      : game_(g), next_var_(first_fresh_var) {}

  aig::Literal encode(const bdd::Bdd& f) {
    if (f.is_false()) return aig::kFalse;
    if (f.is_true()) return aig::kTrue;
    auto it = node_memo_.find(f.id());
    if (it != node_memo_.end()) return it->second;

    bdd::VarId v = f.top_var();
    aig::Literal var_lit = game_.lit_of_var[v];
    aig::Literal hi = encode(f.high());
    aig::Literal lo = encode(f.low());
    // (v & hi) | (!v & lo), the OR as a negated AND of negations
    aig::Literal a = mk_and(var_lit, hi);
    aig::Literal b = mk_and(!var_lit, lo);
    aig::Literal result = !mk_and(!a, !b);
    node_memo_.emplace(f.id(), result);
    return result;
  }

  std::vector<aig::AndGate>&& take_gates() { return std::move(gates_); }

private:
  aig::Literal mk_and(aig::Literal a, aig::Literal b) {
    if (a == aig::kFalse || b == aig::kFalse) return aig::kFalse;
    if (a == aig::kTrue) return b;
    if (b == aig::kTrue) return a;
    if (a == b) return a;
    if (a == !b) return aig::kFalse;
    if (a.value() < b.value()) std::swap(a, b);  // normalize: rhs0 >= rhs1
    uint64_t key = (uint64_t(a.value()) << 32) | b.value();
    auto it = gate_memo_.find(key);
    if (it != gate_memo_.end()) return it->second;
    aig::Literal lhs = aig::Literal::positive(next_var_++);
    gates_.push_back({lhs, a, b});
    gate_memo_.emplace(key, lhs);
    return lhs;
  }

  const game::SafetyGame& game_;
  unsigned next_var_;
  std::vector<aig::AndGate> gates_;
  std::unordered_map<bdd::NodeId, aig::Literal> node_memo_;
  std::unordered_map<uint64_t, aig::Literal> gate_memo_;
};

}  // namespace

StrategyNet encode_circuit(const game::SafetyGame& g,
                           const std::vector<std::pair<bdd::VarId, bdd::Bdd>>& fns) {
  for (const auto& [cv, f] : fns) {
    (void)cv;
    for (bdd::VarId v : g.manager->support(f))
      if (std::find(g.c_vars.begin(), g.c_vars.end(), v) != g.c_vars.end())
        throw std::invalid_argument("strategy function depends on a controllable input");
  }

  StrategyNet net;
  GateEncoder enc(g, g.spec_max_var + 1);
  for (const auto& [cv, f] : fns)
    net.defs.emplace_back(g.lit_of_var[cv], enc.encode(f));
  net.new_ands = enc.take_gates();
  return net;
}

SynthesisResult synthesize(const aig::Circuit& spec) {
  SynthesisResult res;
  res.game = game::build_game(spec);
  res.outcome = game::solve(res.game);
  res.realizable = res.outcome.realizable;
  if (!res.realizable) return res;

  PermissiveStrategy perm = permissive_strategy(res.game, res.outcome);
  auto fns = resolve(res.game, perm);
  res.net = encode_circuit(res.game, fns);

  std::map<aig::Literal, aig::Literal> defs(res.net.defs.begin(), res.net.defs.end());
  res.solution = aig::merge_solution(spec, defs, res.net.new_ands);
  return res;
}

}  // namespace synt::strategy
