#include <doctest.h>

#include <random>

#include "support/random_circuit.hpp"
#include "synt/game.hpp"
#include "synt/oracle.hpp"

using namespace synt;
using namespace synt::game;
using synt::bdd::Bdd;

namespace {

aig::Circuit one_latch_game() {
  return aig::parse_ascii(
      "aag 4 2 1 1 1\n"
      "2\n4\n"
      "6 8\n"
      "6\n"
      "8 5 2\n"
      "i0 u\ni1 controllable_c\n");
}

// Evaluates a game BDD on a (state, input) valuation given by circuit values.
std::vector<bool> game_assignment(const SafetyGame& g, const aig::Circuit& c,
                                  const std::vector<bool>& latch_state,
                                  const std::vector<bool>& inputs) {
  std::vector<bool> by_var(g.manager->num_vars(), false);
  auto set_for = [&](aig::Literal lit, bool value) {
    for (bdd::VarId v = 0; v < g.lit_of_var.size(); ++v)
      if (g.lit_of_var[v] == lit) by_var[v] = value;
  };
  for (size_t i = 0; i < c.inputs.size(); ++i) set_for(c.inputs[i].lit, inputs[i]);
  for (size_t i = 0; i < c.latches.size(); ++i) set_for(c.latches[i].lit, latch_state[i]);
  return by_var;
}

bool winning_region_matches_oracle(const SafetyGame& g, const SolveOutcome& out,
                                   const oracle::ExplicitSolveResult& ref) {
  unsigned n_latch = static_cast<unsigned>(g.latch_vars.size());
  for (uint32_t s = 0; s < (1u << n_latch); ++s) {
    std::vector<bool> by_var(g.manager->num_vars(), false);
    for (unsigned i = 0; i < n_latch; ++i) by_var[g.latch_vars[i]] = (s >> i) & 1u;
    if (g.manager->eval(out.winning_region, by_var) != ref.winning[s]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_game on constant and passthrough error outputs") {
  std::mt19937_64 rng(51);
  aig::Circuit c = test_support::random_spec(rng, {3, 2, 1, 8});
  c.outputs[0] = aig::kFalse;
  SafetyGame g = build_game(c);
  CHECK(g.error_fn.is_false());

  aig::Circuit pass = aig::parse_ascii("aag 1 1 0 1 0\n2\n2\ni0 u0\n");
  SafetyGame gp = build_game(pass);
  CHECK(gp.error_fn == gp.manager->var(gp.u_vars[0]));
}

TEST_CASE("build_game folds gates exactly like the simulator") {
  std::mt19937_64 rng(52);
  int done = 0;
  while (done < 50) {
    aig::Circuit c = test_support::random_spec(rng, {4, 2, 2, 20});
    if (c.inputs.size() + c.latches.size() > 10) continue;
    ++done;
    SafetyGame g = build_game(c);
    oracle::GateSimulator sim(c);
    unsigned n_latch = static_cast<unsigned>(c.latches.size());
    unsigned n_in = static_cast<unsigned>(c.inputs.size());
    for (uint32_t s = 0; s < (1u << n_latch); ++s) {
      for (uint32_t in = 0; in < (1u << n_in); ++in) {
        std::vector<bool> latch_state(n_latch), inputs(n_in);
        for (unsigned i = 0; i < n_latch; ++i) latch_state[i] = (s >> i) & 1u;
        for (unsigned i = 0; i < n_in; ++i) inputs[i] = (in >> i) & 1u;
        auto ref = sim.step(latch_state, inputs);
        auto a = game_assignment(g, c, latch_state, inputs);
        CHECK(g.manager->eval(g.error_fn, a) == ref.outputs[0]);
        for (unsigned i = 0; i < n_latch; ++i)
          CHECK(g.manager->eval(g.next_fns[i], a) == ref.next_latches[i]);
      }
    }
  }
}

TEST_CASE("upre on hand-checked games") {
  SUBCASE("no error, empty target") {
    aig::Circuit c = aig::parse_ascii("aag 1 0 1 1 0\n2 2\n0\n");
    SafetyGame g = build_game(c);
    CHECK(upre(g, g.manager->constant(false)).is_false());
  }
  SUBCASE("environment raises the error at will") {
    aig::Circuit c = aig::parse_ascii("aag 2 1 1 1 0\n2\n4 4\n2\ni0 u0\n");
    SafetyGame g = build_game(c);
    CHECK(upre(g, g.manager->constant(false)).is_true());
  }
  SUBCASE("1-latch game: UPRE of nothing is the error state") {
    SafetyGame g = build_game(one_latch_game());
    Bdd latch = g.manager->var(g.latch_vars[0]);
    CHECK(upre(g, g.manager->constant(false)) == latch);
  }
  SUBCASE("targets over input variables are rejected") {
    SafetyGame g = build_game(one_latch_game());
    CHECK_THROWS_AS(upre(g, g.manager->var(g.u_vars[0])), std::invalid_argument);
  }
}

TEST_CASE("solve on hand-checked games") {
  SUBCASE("constant false error: everything wins in one iteration") {
    aig::Circuit c = aig::parse_ascii("aag 1 0 1 1 0\n2 2\n0\n");
    SafetyGame g = build_game(c);
    SolveOutcome out = solve(g);
    CHECK(out.realizable);
    CHECK(out.winning_region.is_true());
    CHECK(out.iterations == 1);
  }
  SUBCASE("constant true error: nothing wins") {
    aig::Circuit c = aig::parse_ascii("aag 1 0 1 1 0\n2 2\n1\n");
    SafetyGame g = build_game(c);
    SolveOutcome out = solve(g);
    CHECK(!out.realizable);
    CHECK(out.winning_region.is_false());
  }
  SUBCASE("1-latch game: winning region is latch == 0") {
    SafetyGame g = build_game(one_latch_game());
    SolveOutcome out = solve(g);
    CHECK(out.realizable);
    CHECK(out.winning_region == !g.manager->var(g.latch_vars[0]));
    CHECK(out.losing_attractor == g.manager->var(g.latch_vars[0]));
    CHECK(out.winning_region == !out.losing_attractor);
  }
}

TEST_CASE("upre is monotone and the attractor is a fixpoint") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 25; ++i) {
    aig::Circuit c = test_support::random_spec(rng, {4, 2, 2, 15});
    SafetyGame g = build_game(c);

    Bdd s = g.manager->constant(false);
    for (bdd::VarId v : g.latch_vars)
      if (rng() & 1) s = s | (rng() & 1 ? g.manager->var(v) : !g.manager->var(v));
    Bdd s2 = s;
    for (bdd::VarId v : g.latch_vars)
      if (rng() & 1) s2 = s2 | g.manager->var(v);
    CHECK(upre(g, s).implies(upre(g, s2)).is_true());

    SolveOutcome out = solve(g);
    CHECK(out.iterations <= (1u << g.latch_vars.size()) + 1);
    CHECK(upre(g, out.losing_attractor).implies(out.losing_attractor).is_true());
    // immediately forced errors are inside the attractor
    CHECK(upre(g, g.manager->constant(false)).implies(out.losing_attractor).is_true());
  }
}

TEST_CASE("solve agrees with the explicit oracle") {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 120; ++i) {
    aig::Circuit c = test_support::random_spec(rng);
    auto ref = oracle::explicit_solve(c);
    SafetyGame g = build_game(c);
    SolveOutcome out = solve(g);
    CHECK(out.realizable == ref.realizable);
    CHECK(winning_region_matches_oracle(g, out, ref));
  }
}
