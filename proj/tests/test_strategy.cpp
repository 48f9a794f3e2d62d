#include <doctest.h>

#include <random>

#include "support/random_circuit.hpp"
#include "synt/game.hpp"
#include "synt/oracle.hpp"
#include "synt/strategy.hpp"

using namespace synt;
using namespace synt::strategy;
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

}  // namespace

TEST_CASE("permissive strategy of an error-free game allows everything") {
  aig::Circuit c = aig::parse_ascii("aag 2 1 1 1 0\n2\n4 4\n0\ni0 controllable_x\n");
  auto g = game::build_game(c);
  auto out = game::solve(g);
  auto p = permissive_strategy(g, out);
  CHECK(p.relation.is_true());
}

TEST_CASE("permissive strategy rejects unrealizable outcomes") {
  aig::Circuit c = aig::parse_ascii("aag 1 0 1 1 0\n2 2\n1\n");
  auto g = game::build_game(c);
  auto out = game::solve(g);
  CHECK_THROWS_AS(permissive_strategy(g, out), std::logic_error);
}

TEST_CASE("1-latch game: relation demands c whenever u holds") {
  auto g = game::build_game(one_latch_game());
  auto out = game::solve(g);
  auto p = permissive_strategy(g, out);
  Bdd latch = g.manager->var(g.latch_vars[0]);
  Bdd u = g.manager->var(g.u_vars[0]);
  Bdd cc = g.manager->var(g.c_vars[0]);
  // inside W (latch=0): not(u & !c); outside: anything
  CHECK(p.relation == (latch | (!(u & !cc))));

  SUBCASE("resolution satisfies the contract f(u=1) = 1") {
    auto fns = resolve(g, p);
    REQUIRE(fns.size() == 1);
    const Bdd& f = fns[0].second;
    // at latch=0, u=1 the controller must answer 1
    std::vector<bool> a(g.manager->num_vars(), false);
    a[g.u_vars[0]] = true;
    CHECK(g.manager->eval(f, a));
  }
}

TEST_CASE("fully permissive relation resolves to constant 0") {
  aig::Circuit c = aig::parse_ascii("aag 2 1 1 1 0\n2\n4 4\n0\ni0 controllable_x\n");
  auto g = game::build_game(c);
  auto out = game::solve(g);
  auto fns = resolve(g, permissive_strategy(g, out));
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].second.is_false());  // ties break toward 0
}

TEST_CASE("state where only c=1 avoids the error forces f=1 there") {
  // error = !c (controller must assert c every step, regardless of u)
  aig::Circuit c = aig::parse_ascii("aag 2 2 0 1 0\n2\n4\n5\ni0 u\ni1 controllable_c\n");
  auto g = game::build_game(c);
  auto out = game::solve(g);
  CHECK(out.realizable);
  auto fns = resolve(g, permissive_strategy(g, out));
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].second.is_true());
}

TEST_CASE("gate encoding of BDD functions") {
  auto g = game::build_game(one_latch_game());

  SUBCASE("constants and single variables cost nothing") {
    auto net0 = encode_circuit(g, {{g.c_vars[0], g.manager->constant(false)}});
    CHECK(net0.gate_count() == 0);
    CHECK(net0.defs[0].second == aig::kFalse);

    auto netv = encode_circuit(g, {{g.c_vars[0], g.manager->var(g.u_vars[0])}});
    CHECK(netv.gate_count() == 0);
    CHECK(netv.defs[0].second == aig::Literal(2));  // u's literal
  }

  SUBCASE("ite nodes cost three ANDs, two with a constant branch") {
    Bdd u = g.manager->var(g.u_vars[0]);
    Bdd l = g.manager->var(g.latch_vars[0]);
    // branch nodes are plain literals (negation rides on parity), so the
    // top node alone pays gates
    Bdd f = g.manager->ite(u, l, !l);
    auto net3 = encode_circuit(g, {{g.c_vars[0], f}});
    CHECK(net3.gate_count() == 3);

    Bdd single = g.manager->ite(u, g.manager->constant(true), l);
    auto net = encode_circuit(g, {{g.c_vars[0], single}});
    CHECK(net.gate_count() == 2);
  }

  SUBCASE("functions over controllable variables are rejected") {
    CHECK_THROWS_AS(encode_circuit(g, {{g.c_vars[0], g.manager->var(g.c_vars[0])}}),
                    std::invalid_argument);
  }

  SUBCASE("encoding is memoized across functions") {
    Bdd u = g.manager->var(g.u_vars[0]);
    Bdd l = g.manager->var(g.latch_vars[0]);
    Bdd f = g.manager->ite(u, l, !l);
    auto once = encode_circuit(g, {{g.c_vars[0], f}});
    auto twice = encode_circuit(g, {{g.c_vars[0], f}, {g.c_vars[0], f}});
    CHECK(twice.gate_count() == once.gate_count());  // second copy adds zero gates
    CHECK(twice.defs[0].second == twice.defs[1].second);
  }
}

TEST_CASE("encoded gates compute the BDD exactly") {
  std::mt19937_64 rng(61);
  int done = 0;
  while (done < 30) {
    aig::Circuit c = test_support::random_spec(rng, {4, 3, 1, 20});
    if (c.num_controllable() != 1 || c.inputs.size() + c.latches.size() > 8) continue;
    auto g = game::build_game(c);
    auto out = game::solve(g);
    if (!out.realizable) continue;
    ++done;
    auto fns = resolve(g, permissive_strategy(g, out));
    auto net = encode_circuit(g, fns);
    auto sol = aig::merge_solution(
        c, std::map<aig::Literal, aig::Literal>(net.defs.begin(), net.defs.end()), net.new_ands);
    oracle::GateSimulator sim(sol);

    unsigned n_latch = static_cast<unsigned>(c.latches.size());
    auto u_positions = c.uncontrollable_indices();
    for (uint32_t s = 0; s < (1u << n_latch); ++s) {
      for (uint32_t in = 0; in < (1u << u_positions.size()); ++in) {
        std::vector<bool> latch_state(n_latch);
        for (unsigned i = 0; i < n_latch; ++i) latch_state[i] = (s >> i) & 1u;
        std::vector<bool> inputs(c.inputs.size(), false);
        std::vector<bool> by_var(g.manager->num_vars(), false);
        for (unsigned i = 0; i < n_latch; ++i) by_var[g.latch_vars[i]] = (s >> i) & 1u;
        for (size_t i = 0; i < u_positions.size(); ++i) {
          bool bit = (in >> i) & 1u;
          inputs[u_positions[i]] = bit;
          by_var[g.u_vars[i]] = bit;
        }
        auto step = sim.step(latch_state, inputs);
        CHECK(step.outputs[1] == g.manager->eval(fns[0].second, by_var));
      }
    }
  }
}

TEST_CASE("synthesize end to end") {
  SUBCASE("error-free specification yields a gate-free controller") {
    aig::Circuit c = aig::parse_ascii("aag 2 1 1 1 0\n2\n4 4\n0\ni0 controllable_x\n");
    auto res = synthesize(c);
    CHECK(res.realizable);
    CHECK(res.net.gate_count() == 0);
    CHECK(res.solution->ands.size() == c.ands.size());
    CHECK(aig::check_syntactic(c, *res.solution).pass());
  }
  SUBCASE("constant error specification is unrealizable") {
    aig::Circuit c = aig::parse_ascii("aag 1 0 1 1 0\n2 2\n1\n");
    auto res = synthesize(c);
    CHECK(!res.realizable);
    CHECK(!res.solution.has_value());
  }
  SUBCASE("1-latch game composes into a safe closed loop") {
    auto res = synthesize(one_latch_game());
    REQUIRE(res.realizable);
    CHECK(aig::check_syntactic(one_latch_game(), *res.solution).pass());
    CHECK(!oracle::explicit_reach_closed(*res.solution).error_reachable);
  }
}

TEST_CASE("winning region is closed under the resolved strategy") {
  std::mt19937_64 rng(62);
  int done = 0;
  while (done < 40) {
    aig::Circuit c = test_support::random_spec(rng);
    auto g = game::build_game(c);
    auto out = game::solve(g);
    if (!out.realizable) continue;
    ++done;
    auto fns = resolve(g, permissive_strategy(g, out));

    std::vector<std::pair<bdd::VarId, Bdd>> latch_subst;
    for (size_t i = 0; i < g.latch_vars.size(); ++i)
      latch_subst.emplace_back(g.latch_vars[i], g.next_fns[i]);
    Bdd stepped = g.manager->compose(out.winning_region, latch_subst);
    Bdd closed = g.manager->compose(stepped, fns);
    CHECK(out.winning_region.implies(closed).is_true());

    // and the composed controller never raises the error inside W
    Bdd err_closed = g.manager->compose(g.error_fn, fns);
    CHECK((out.winning_region & err_closed).is_false());
  }
}

TEST_CASE("synthesized solutions are safe on the random corpus") {
  std::mt19937_64 rng(63);
  int done = 0;
  while (done < 60) {
    aig::Circuit c = test_support::random_spec(rng);
    auto res = synthesize(c);
    if (!res.realizable) continue;
    ++done;
    CHECK(aig::check_syntactic(c, *res.solution).pass());
    CHECK(!oracle::explicit_reach_closed(*res.solution).error_reachable);
  }
}
