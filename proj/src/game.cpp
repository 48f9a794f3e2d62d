#include "synt/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace synt::game {

namespace {

// Folds the circuit into per-variable BDDs; gates are processed in ascending
// lhs order, which the AIGER ordering invariant makes topological.
std::vector<bdd::Bdd> fold_circuit(bdd::Manager& mgr, const aig::Circuit& c,
                                   const std::vector<bdd::Bdd>& leaf_of_var) {
  std::vector<bdd::Bdd> val(c.max_var + 1);
  val[0] = mgr.constant(false);
  for (const auto& in : c.inputs) val[in.lit.var()] = leaf_of_var[in.lit.var()];
  for (const auto& la : c.latches) val[la.lit.var()] = leaf_of_var[la.lit.var()];

  auto lit_bdd = [&](aig::Literal l) {
    bdd::Bdd b = val[l.var()];
    return l.negated() ? !b : b;
  };
  std::vector<aig::AndGate> gates = c.ands;
  std::sort(gates.begin(), gates.end(),
            [](const aig::AndGate& a, const aig::AndGate& b) { return a.lhs.var() < b.lhs.var(); });
  for (const auto& g : gates) val[g.lhs.var()] = lit_bdd(g.rhs0) & lit_bdd(g.rhs1);
  return val;
}

}  // namespace

SafetyGame build_game(const aig::Circuit& spec) {
  aig::validate(spec, aig::ParseMode::specification);

  SafetyGame g;
  unsigned num_vars = static_cast<unsigned>(spec.inputs.size() + spec.latches.size());
  g.manager = std::make_unique<bdd::Manager>(num_vars);
  g.spec_max_var = spec.max_var;
  g.lit_of_var.resize(num_vars);

  bdd::VarId next_var = 0;
  std::vector<bdd::Bdd> leaf(spec.max_var + 1);
  for (const auto& in : spec.inputs) {
    if (in.controllable) continue;
    g.u_vars.push_back(next_var);
    g.lit_of_var[next_var] = in.lit;
    leaf[in.lit.var()] = g.manager->var(next_var);
    ++next_var;
  }
  for (const auto& in : spec.inputs) {
    if (!in.controllable) continue;
    g.c_vars.push_back(next_var);
    g.lit_of_var[next_var] = in.lit;
    leaf[in.lit.var()] = g.manager->var(next_var);
    ++next_var;
  }
  for (const auto& la : spec.latches) {
    g.latch_vars.push_back(next_var);
    g.lit_of_var[next_var] = la.lit;
    g.latch_names.push_back(la.name);
    leaf[la.lit.var()] = g.manager->var(next_var);
    ++next_var;
  }

  auto val = fold_circuit(*g.manager, spec, leaf);
  auto lit_bdd = [&](aig::Literal l) {
    bdd::Bdd b = val[l.var()];
    return l.negated() ? !b : b;
  };

  g.error_fn = lit_bdd(spec.outputs[0]);
  g.next_fns.reserve(spec.latches.size());
  for (const auto& la : spec.latches) g.next_fns.push_back(lit_bdd(la.next));

  g.init = g.manager->constant(true);
  for (bdd::VarId v : g.latch_vars) g.init = g.init & !g.manager->var(v);
  return g;
}

bdd::Bdd upre(const SafetyGame& g, const bdd::Bdd& target) {
  auto sup = g.manager->support(target);
  for (bdd::VarId v : sup)
    if (std::find(g.latch_vars.begin(), g.latch_vars.end(), v) == g.latch_vars.end())
      throw std::invalid_argument("upre target mentions a non-latch variable");

  std::vector<std::pair<bdd::VarId, bdd::Bdd>> subst;
  subst.reserve(g.latch_vars.size());
  for (size_t i = 0; i < g.latch_vars.size(); ++i)
    subst.emplace_back(g.latch_vars[i], g.next_fns[i]);

  bdd::Bdd step = g.error_fn | g.manager->compose(target, subst);
  bdd::Bdd forced = g.manager->forall(step, g.c_vars);
  return g.manager->exists(forced, g.u_vars);
}

SolveOutcome solve(const SafetyGame& g) {
  SolveOutcome out;
  bdd::Bdd attractor = g.manager->constant(false);
  while (true) {
    bdd::Bdd next = attractor | upre(g, attractor);
    ++out.iterations;
    if (next == attractor) break;
    attractor = next;
  }
  out.losing_attractor = attractor;
  out.winning_region = !attractor;
  out.realizable = (g.init & attractor).is_false();
  return out;
}

}  // namespace synt::game
