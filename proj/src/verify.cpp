#include "synt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <unordered_map>

namespace synt::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::VERIFIED_INVARIANT: return "VERIFIED_INVARIANT";
    case Status::VERIFIED_MODEL_CHECK: return "VERIFIED_MODEL_CHECK";
    case Status::SYNTACTIC_FAIL: return "SYNTACTIC_FAIL";
    case Status::SEMANTIC_FAIL: return "SEMANTIC_FAIL";
    case Status::TIMEOUT: return "TIMEOUT";
  }
  return "UNKNOWN";
}

ClosedLoop build_closed_loop(const aig::Circuit& solution) {
  aig::validate(solution, aig::ParseMode::any_outputs);
  auto ctrl = solution.controllable_indices();
  if (solution.outputs.size() != 1 + ctrl.size())
    throw std::invalid_argument("solution must carry one definition output per controllable input");

  ClosedLoop cl;
  size_t n_u = solution.inputs.size() - ctrl.size();
  size_t n_l = solution.latches.size();
  cl.manager = std::make_unique<bdd::Manager>(static_cast<unsigned>(n_u + 2 * n_l));
  cl.latch_ids = latch_identifiers(solution);

  // Order: uncontrollable inputs first, then latch/shadow pairs interleaved.
  bdd::VarId next_var = 0;
  std::vector<bdd::Bdd> val(solution.max_var + 1);
  val[0] = cl.manager->constant(false);
  for (const auto& in : solution.inputs) {
    if (in.controllable) continue;
    cl.u_vars.push_back(next_var);
    val[in.lit.var()] = cl.manager->var(next_var);
    ++next_var;
  }
  for (const auto& la : solution.latches) {
    cl.latch_vars.push_back(next_var);
    val[la.lit.var()] = cl.manager->var(next_var);
    cl.shadow_vars.push_back(next_var + 1);
    next_var += 2;
  }

  auto lit_bdd = [&](aig::Literal l) {
    bdd::Bdd b = val[l.var()];
    if (!b.valid()) throw std::logic_error("definition cone visits an unresolved variable");
    return l.negated() ? !b : b;
  };
  std::unordered_map<unsigned, const aig::AndGate*> gate_of;
  for (const auto& g : solution.ands) gate_of[g.lhs.var()] = &g;

  // Definition cones avoid controllable variables, so folding them first and
  // seeding the controllable leaves with the results closes the loop.
  auto fold = [&](auto&& self, unsigned v) -> void {
    if (val[v].valid()) return;
    auto it = gate_of.find(v);
    if (it == gate_of.end()) throw std::logic_error("unresolved non-gate variable in cone");
    self(self, it->second->rhs0.var());
    self(self, it->second->rhs1.var());
    val[v] = lit_bdd(it->second->rhs0) & lit_bdd(it->second->rhs1);
  };
  for (size_t i = 0; i < ctrl.size(); ++i) {
    aig::Literal def = solution.outputs[1 + i];
    fold(fold, def.var());
    val[solution.inputs[ctrl[i]].lit.var()] = lit_bdd(def);
  }
  for (const auto& g : solution.ands) fold(fold, g.lhs.var());

  cl.error_fn = lit_bdd(solution.outputs[0]);
  cl.next_fns.reserve(n_l);
  for (const auto& la : solution.latches) cl.next_fns.push_back(lit_bdd(la.next));
  cl.init = cl.manager->constant(true);
  for (bdd::VarId v : cl.latch_vars) cl.init = cl.init & !cl.manager->var(v);
  return cl;
}

InvariantCheck check_invariant(const ClosedLoop& cl, const bdd::Bdd& region) {
  for (bdd::VarId v : cl.manager->support(region))
    if (std::find(cl.latch_vars.begin(), cl.latch_vars.end(), v) == cl.latch_vars.end())
      throw std::invalid_argument("witness region mentions a non-latch variable");

  if (!cl.init.implies(region).is_true())
    return {false, 1, "initial state outside the region"};
  if (!(region & cl.error_fn).is_false())
    return {false, 2, "region intersects the error states"};

  std::vector<std::pair<bdd::VarId, bdd::Bdd>> subst;
  for (size_t i = 0; i < cl.latch_vars.size(); ++i)
    subst.emplace_back(cl.latch_vars[i], cl.next_fns[i]);
  bdd::Bdd post = cl.manager->forall(cl.manager->compose(region, subst), cl.u_vars);
  if (!region.implies(post).is_true())
    return {false, 3, "region is not inductive under every environment move"};
  return {true, 0, ""};
}

namespace {

// Concrete state from a (possibly partial) cube; unmentioned bits are 0.
std::vector<bool> complete_assignment(const bdd::CubeTerm& cube, unsigned num_vars) {
  std::vector<bool> a(num_vars, false);
  for (auto [v, b] : cube) a[v] = b;
  return a;
}

std::vector<bool> project(const std::vector<bool>& a, const std::vector<bdd::VarId>& vars) {
  std::vector<bool> out;
  out.reserve(vars.size());
  for (bdd::VarId v : vars) out.push_back(a[v]);
  return out;
}

bdd::Bdd state_cube(const ClosedLoop& cl, const std::vector<bdd::VarId>& vars,
                    const std::vector<bool>& bits) {
  bdd::Bdd cube = cl.manager->constant(true);
  for (size_t i = 0; i < vars.size(); ++i) {
    bdd::Bdd v = cl.manager->var(vars[i]);
    cube = cube & (bits[i] ? v : !v);
  }
  return cube;
}

}  // namespace

Verdict model_check(const ClosedLoop& cl, double budget_seconds) {
  auto t0 = Clock::now();
  Verdict verdict{Status::VERIFIED_MODEL_CHECK, std::nullopt, 0, 0, 0, ""};
  bdd::Manager& mgr = *cl.manager;

  // Transition relation over (L, u, L').
  bdd::Bdd trans = mgr.constant(true);
  for (size_t i = 0; i < cl.latch_vars.size(); ++i)
    trans = trans & mgr.var(cl.shadow_vars[i]).iff(cl.next_fns[i]);

  std::vector<bdd::VarId> current_and_inputs = cl.latch_vars;
  current_and_inputs.insert(current_and_inputs.end(), cl.u_vars.begin(), cl.u_vars.end());
  std::vector<std::pair<bdd::VarId, bdd::Bdd>> unshadow;
  for (size_t i = 0; i < cl.latch_vars.size(); ++i)
    unshadow.emplace_back(cl.shadow_vars[i], mgr.var(cl.latch_vars[i]));

  std::vector<bdd::Bdd> layers;  // cumulative reach sets, for trace extraction
  bdd::Bdd reach = cl.init;
  layers.push_back(reach);

  while (true) {
    bdd::Bdd bad = reach & cl.error_fn;
    if (!bad.is_false()) {
      // Walk the stored layers back to the initial state.
      Counterexample cex;
      auto cube = complete_assignment(*mgr.pick_cube(bad), mgr.num_vars());
      cex.final_input = project(cube, cl.u_vars);
      std::vector<bool> state = project(cube, cl.latch_vars);
      auto layer_of = [&](const std::vector<bool>& s) {
        bdd::Bdd c = state_cube(cl, cl.latch_vars, s);
        for (size_t j = 0; j < layers.size(); ++j)
          if (!(layers[j] & c).is_false()) return j;
        return layers.size();  // unreachable; loop below cannot continue
      };
      for (size_t j = layer_of(state); j > 0; j = layer_of(state)) {
        bdd::Bdd target = mgr.constant(true);
        for (size_t i = 0; i < cl.latch_vars.size(); ++i) {
          bdd::Bdd sv = mgr.var(cl.shadow_vars[i]);
          target = target & (state[i] ? sv : !sv);
        }
        bdd::Bdd pred = layers[j - 1] & trans & target;
        auto pcube = complete_assignment(*mgr.pick_cube(pred), mgr.num_vars());
        cex.steps.push_back(project(pcube, cl.u_vars));
        state = project(pcube, cl.latch_vars);
      }
      std::reverse(cex.steps.begin(), cex.steps.end());
      verdict.status = Status::SEMANTIC_FAIL;
      verdict.detail = "error reachable after " + std::to_string(cex.steps.size()) + " steps";
      verdict.counterexample = std::move(cex);
      break;
    }

    if (seconds_since(t0) > budget_seconds) {
      verdict.status = Status::TIMEOUT;
      verdict.detail = "model checking budget exhausted";
      break;
    }

    bdd::Bdd image = mgr.compose(mgr.exists(reach & trans, current_and_inputs), unshadow);
    bdd::Bdd next = reach | image;
    ++verdict.iterations;
    if (next == reach) break;  // fixpoint, no reachable error
    reach = next;
    layers.push_back(reach);
  }

  verdict.bdd_nodes = mgr.live_node_count();
  verdict.wall_seconds = seconds_since(t0);
  return verdict;
}

Verdict verify_pipeline(const aig::Circuit& spec, const aig::Circuit& solution,
                        const std::optional<std::string>& witness_text,
                        double mc_budget_seconds) {
  auto t0 = Clock::now();
  auto report = aig::check_syntactic(spec, solution);
  if (!report.pass()) {
    Verdict v{Status::SYNTACTIC_FAIL, std::nullopt, 0, 0, 0, report.detail};
    v.wall_seconds = seconds_since(t0);
    return v;
  }

  ClosedLoop cl = build_closed_loop(solution);
  std::string invariant_note;
  if (witness_text) {
    try {
      bdd::Bdd region = parse_witness(*witness_text, *cl.manager, cl.latch_vars, cl.latch_ids);
      InvariantCheck ic = check_invariant(cl, region);
      if (ic.pass) {
        Verdict v{Status::VERIFIED_INVARIANT, std::nullopt, 0, cl.manager->live_node_count(), 0, ""};
        v.wall_seconds = seconds_since(t0);
        return v;
      }
      invariant_note = "invariant check failed (clause " + std::to_string(ic.failed_clause) +
                       ": " + ic.detail + "); ";
    } catch (const WitnessError& e) {
      invariant_note = std::string("witness rejected (") + e.what() + "); ";
    } catch (const std::invalid_argument& e) {
      invariant_note = std::string("witness rejected (") + e.what() + "); ";
    }
  }

  Verdict v = model_check(cl, mc_budget_seconds);
  v.detail = invariant_note + v.detail;
  v.wall_seconds = seconds_since(t0);
  return v;
}

std::vector<std::string> latch_identifiers(const aig::Circuit& c) {
  std::vector<std::string> ids;
  ids.reserve(c.latches.size());
  bool usable = true;
  std::set<std::string> seen;
  for (const auto& la : c.latches) {
    if (la.name.empty() || la.name.find_first_of(" \t") != std::string::npos ||
        !seen.insert(la.name).second) {
      usable = false;
      break;
    }
  }
  for (size_t i = 0; i < c.latches.size(); ++i)
    ids.push_back(usable ? c.latches[i].name : "l" + std::to_string(i));
  return ids;
}

std::string witness_to_text(bdd::Manager& mgr, const bdd::Bdd& region,
                            const std::vector<bdd::VarId>& latch_vars,
                            const std::vector<std::string>& latch_ids) {
  std::ostringstream out;
  out << "WINNING_REGION\n";
  out << "latches";
  for (const auto& id : latch_ids) out << ' ' << id;
  out << '\n';
  if (latch_vars.empty()) {
    out << (region.is_true() ? "true\n" : "false\n");
    return out.str();
  }
  std::unordered_map<bdd::VarId, size_t> column;
  for (size_t i = 0; i < latch_vars.size(); ++i) column[latch_vars[i]] = i;
  for (const auto& cube : mgr.isop_cover(region)) {
    std::string line(latch_vars.size(), '-');
    for (auto [v, b] : cube) line[column.at(v)] = b ? '1' : '0';
    out << line << '\n';
  }
  return out.str();
}

bdd::Bdd parse_witness(const std::string& text, bdd::Manager& mgr,
                       const std::vector<bdd::VarId>& latch_vars,
                       const std::vector<std::string>& latch_ids) {
  std::istringstream in(text);
  std::string line;
  auto next_content_line = [&](std::string& out_line) {
    while (std::getline(in, out_line)) {
      while (!out_line.empty() && (out_line.back() == '\r' || out_line.back() == ' '))
        out_line.pop_back();
      if (!out_line.empty()) return true;
    }
    return false;
  };

  if (!next_content_line(line) || line != "WINNING_REGION")
    throw WitnessError("missing WINNING_REGION header");
  if (!next_content_line(line) || line.rfind("latches", 0) != 0)
    throw WitnessError("missing latches line");

  std::istringstream hdr(line);
  std::string tok;
  hdr >> tok;  // "latches"
  std::vector<size_t> col_to_latch;  // column -> index into latch_vars
  std::unordered_map<std::string, size_t> id_index;
  for (size_t i = 0; i < latch_ids.size(); ++i) id_index[latch_ids[i]] = i;
  std::set<size_t> used;
  while (hdr >> tok) {
    auto it = id_index.find(tok);
    if (it == id_index.end()) throw WitnessError("unknown latch identifier: " + tok);
    if (!used.insert(it->second).second) throw WitnessError("duplicate latch identifier: " + tok);
    col_to_latch.push_back(it->second);
  }
  if (col_to_latch.size() != latch_vars.size())
    throw WitnessError("latch header does not cover the circuit's latches");

  bdd::Bdd region = mgr.constant(false);
  while (next_content_line(line)) {
    if (line == "true") {
      region = region | mgr.constant(true);
      continue;
    }
    if (line == "false") continue;
    if (line.size() != col_to_latch.size())
      throw WitnessError("cube width does not match the latch count");
    bdd::Bdd cube = mgr.constant(true);
    for (size_t col = 0; col < line.size(); ++col) {
      char ch = line[col];
      if (ch == '-') continue;
      if (ch != '0' && ch != '1') throw WitnessError("invalid cube character");
      bdd::Bdd v = mgr.var(latch_vars[col_to_latch[col]]);
      cube = cube & (ch == '1' ? v : !v);
    }
    region = region | cube;
  }
  return region;
}

}  // namespace synt::verify
