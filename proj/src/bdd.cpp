#include "synt/bdd.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace synt::bdd {

namespace {

// RAII guard: housekeeping (GC, auto reorder) runs only between top-level
// operations, never while a recursion holds unprotected intermediate nodes.
struct DepthGuard {
  unsigned& depth;
  explicit DepthGuard(unsigned& d) : depth(d) { ++depth; }
  ~DepthGuard() { --depth; }
};

}  // namespace

Manager::Manager(unsigned num_vars) : Manager(num_vars, Options{}) {}

Manager::Manager(unsigned num_vars, Options options)
    : num_vars_(num_vars), options_(options) {
  nodes_.push_back({kTermVar, kFalseNode, kFalseNode});  // false terminal
  nodes_.push_back({kTermVar, kTrueNode, kTrueNode});    // true terminal
  ext_refs_.assign(2, 0);
  unique_.resize(num_vars_);
  level_of_var_.resize(num_vars_);
  var_at_level_.resize(num_vars_);
  for (VarId v = 0; v < num_vars_; ++v) {
    level_of_var_[v] = v;
    var_at_level_[v] = v;
  }
}

void Manager::check_var(VarId v) const {
  if (v >= num_vars_) throw std::out_of_range("unknown BDD variable " + std::to_string(v));
}

void Manager::check_operand(const Bdd& f) const {
  if (f.manager() != this)
    throw std::invalid_argument("BDD operand belongs to a different manager");
}

NodeId Manager::make_node(VarId var, NodeId hi, NodeId lo) {
  if (hi == lo) return hi;
  uint64_t key = child_key(hi, lo);
  auto& table = unique_[var];
  auto it = table.find(key);
  if (it != table.end()) return it->second;

  NodeId id;
  if (!free_list_.empty()) {
    id = free_list_.back();
    free_list_.pop_back();
    nodes_[id] = {var, hi, lo};
  } else {
    id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({var, hi, lo});
    ext_refs_.push_back(0);
  }
  ++in_use_;
  table.emplace(key, id);
  return id;
}

NodeId Manager::var_node(VarId v) { return make_node(v, kTrueNode, kFalseNode); }

Bdd Manager::constant(bool value) { return adopt(value ? kTrueNode : kFalseNode); }

Bdd Manager::var(VarId v) {
  check_var(v);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(var_node(v));
}

NodeId Manager::ite_rec(NodeId f, NodeId g, NodeId h) {
  if (f == kTrueNode) return g;
  if (f == kFalseNode) return h;
  if (g == h) return g;
  if (g == kTrueNode && h == kFalseNode) return f;

  CacheKey key{kOpIte, f, g, h};
  if (options_.use_computed_cache) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  unsigned level = std::min({level_of(f), level_of(g), level_of(h)});
  VarId v = var_at_level_[level];
  NodeId f1 = cofactor(f, level, true), f0 = cofactor(f, level, false);
  NodeId g1 = cofactor(g, level, true), g0 = cofactor(g, level, false);
  NodeId h1 = cofactor(h, level, true), h0 = cofactor(h, level, false);
  NodeId r1 = ite_rec(f1, g1, h1);
  NodeId r0 = ite_rec(f0, g0, h0);
  NodeId r = make_node(v, r1, r0);

  if (options_.use_computed_cache) cache_.emplace(key, r);
  return r;
}

Bdd Manager::ite(const Bdd& f, const Bdd& g, const Bdd& h) {
  check_operand(f);
  check_operand(g);
  check_operand(h);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(ite_rec(f.id(), g.id(), h.id()));
}

Bdd Manager::apply_and(const Bdd& f, const Bdd& g) {
  check_operand(f);
  check_operand(g);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(ite_rec(f.id(), g.id(), kFalseNode));
}

Bdd Manager::apply_or(const Bdd& f, const Bdd& g) {
  check_operand(f);
  check_operand(g);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(ite_rec(f.id(), kTrueNode, g.id()));
}

Bdd Manager::apply_xor(const Bdd& f, const Bdd& g) {
  check_operand(f);
  check_operand(g);
  housekeeping();
  DepthGuard guard(op_depth_);
  NodeId ng = ite_rec(g.id(), kFalseNode, kTrueNode);
  return adopt(ite_rec(f.id(), ng, g.id()));
}

Bdd Manager::apply_not(const Bdd& f) {
  check_operand(f);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(not_rec(f.id()));
}

NodeId Manager::cube_of(std::span<const VarId> vars) {
  // Conjunction of positive literals; build bottom-up in level order.
  std::vector<VarId> sorted(vars.begin(), vars.end());
  for (VarId v : sorted) check_var(v);
  std::sort(sorted.begin(), sorted.end(),
            [&](VarId a, VarId b) { return level_of_var_[a] > level_of_var_[b]; });
  NodeId cube = kTrueNode;
  for (VarId v : sorted) cube = make_node(v, cube, kFalseNode);
  return cube;
}

NodeId Manager::exists_rec(NodeId f, NodeId cube) {
  if (is_terminal(f)) return f;
  while (!is_terminal(cube) && level_of(cube) < level_of(f)) cube = nodes_[cube].hi;
  if (is_terminal(cube)) return f;

  CacheKey key{kOpExists, f, cube, 0};
  if (options_.use_computed_cache) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  NodeId r;
  if (level_of(f) == level_of(cube)) {
    NodeId a = exists_rec(nodes_[f].hi, nodes_[cube].hi);
    if (a == kTrueNode) {
      r = kTrueNode;
    } else {
      NodeId b = exists_rec(nodes_[f].lo, nodes_[cube].hi);
      r = or_rec(a, b);
    }
  } else {
    NodeId a = exists_rec(nodes_[f].hi, cube);
    NodeId b = exists_rec(nodes_[f].lo, cube);
    r = make_node(nodes_[f].var, a, b);
  }

  if (options_.use_computed_cache) cache_.emplace(key, r);
  return r;
}

Bdd Manager::exists(const Bdd& f, std::span<const VarId> vars) {
  check_operand(f);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(exists_rec(f.id(), cube_of(vars)));
}

Bdd Manager::forall(const Bdd& f, std::span<const VarId> vars) {
  check_operand(f);
  housekeeping();
  DepthGuard guard(op_depth_);
  return adopt(not_rec(exists_rec(not_rec(f.id()), cube_of(vars))));
}

NodeId Manager::compose_rec(NodeId f, const std::vector<NodeId>& by_var,
                            std::unordered_map<NodeId, NodeId>& memo) {
  if (is_terminal(f)) return f;
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;

  NodeId hi = compose_rec(nodes_[f].hi, by_var, memo);
  NodeId lo = compose_rec(nodes_[f].lo, by_var, memo);
  VarId v = nodes_[f].var;
  // by_var stores the substitute node id + 2 to distinguish "mapped to false"
  // from "unmapped"; see compose() below.
  NodeId g = by_var[v] == 0 ? var_node(v) : by_var[v] - 2;
  NodeId r = ite_rec(g, hi, lo);
  memo.emplace(f, r);
  return r;
}

Bdd Manager::compose(const Bdd& f, const std::vector<std::pair<VarId, Bdd>>& substitution) {
  check_operand(f);
  housekeeping();
  DepthGuard guard(op_depth_);
  std::vector<NodeId> by_var(num_vars_, 0);  // 0 = unmapped, else node id + 2
  for (const auto& [v, g] : substitution) {
    check_var(v);
    check_operand(g);
    if (by_var[v] != 0)
      throw std::invalid_argument("duplicate substitution for variable " + std::to_string(v));
    by_var[v] = g.id() + 2;
  }
  std::unordered_map<NodeId, NodeId> memo;
  return adopt(compose_rec(f.id(), by_var, memo));
}

NodeId Manager::restrict_rec(NodeId f, NodeId care,
                             std::unordered_map<uint64_t, NodeId>& memo) {
  if (care == kTrueNode || is_terminal(f)) return f;
  if (care == kFalseNode) return f;  // empty care set constrains nothing
  uint64_t key = child_key(f, care);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  NodeId r;
  unsigned lf = level_of(f), lc = level_of(care);
  if (lc < lf) {
    // f does not depend on the care set's top variable: drop it.
    if (nodes_[care].lo == kFalseNode) r = restrict_rec(f, nodes_[care].hi, memo);
    else if (nodes_[care].hi == kFalseNode) r = restrict_rec(f, nodes_[care].lo, memo);
    else r = restrict_rec(f, or_rec(nodes_[care].hi, nodes_[care].lo), memo);
  } else if (lc == lf) {
    if (nodes_[care].lo == kFalseNode) r = restrict_rec(nodes_[f].hi, nodes_[care].hi, memo);
    else if (nodes_[care].hi == kFalseNode) r = restrict_rec(nodes_[f].lo, nodes_[care].lo, memo);
    else
      r = make_node(nodes_[f].var, restrict_rec(nodes_[f].hi, nodes_[care].hi, memo),
                    restrict_rec(nodes_[f].lo, nodes_[care].lo, memo));
  } else {
    r = make_node(nodes_[f].var, restrict_rec(nodes_[f].hi, care, memo),
                  restrict_rec(nodes_[f].lo, care, memo));
  }
  memo.emplace(key, r);
  return r;
}

Bdd Manager::restrict_to(const Bdd& f, const Bdd& care) {
  check_operand(f);
  check_operand(care);
  housekeeping();
  DepthGuard guard(op_depth_);
  std::unordered_map<uint64_t, NodeId> memo;
  return adopt(restrict_rec(f.id(), care.id(), memo));
}

std::vector<CubeTerm> Manager::isop_rec(NodeId lower, NodeId upper, NodeId* cover_bdd) {
  if (lower == kFalseNode) {
    *cover_bdd = kFalseNode;
    return {};
  }
  if (upper == kTrueNode) {
    *cover_bdd = kTrueNode;
    return {CubeTerm{}};
  }
  unsigned level = std::min(level_of(lower), level_of(upper));
  VarId v = var_at_level_[level];
  NodeId l0 = cofactor(lower, level, false), l1 = cofactor(lower, level, true);
  NodeId u0 = cofactor(upper, level, false), u1 = cofactor(upper, level, true);

  NodeId g0, g1, gd;
  auto c0 = isop_rec(and_rec(l0, not_rec(u1)), u0, &g0);  // cubes containing !v
  auto c1 = isop_rec(and_rec(l1, not_rec(u0)), u1, &g1);  // cubes containing v
  NodeId rest0 = and_rec(l0, not_rec(g0));
  NodeId rest1 = and_rec(l1, not_rec(g1));
  auto cd = isop_rec(or_rec(rest0, rest1), and_rec(u0, u1), &gd);

  std::vector<CubeTerm> cover;
  cover.reserve(c0.size() + c1.size() + cd.size());
  for (auto& cube : c0) {
    cube.insert(cube.begin(), {v, false});
    cover.push_back(std::move(cube));
  }
  for (auto& cube : c1) {
    cube.insert(cube.begin(), {v, true});
    cover.push_back(std::move(cube));
  }
  for (auto& cube : cd) cover.push_back(std::move(cube));

  *cover_bdd = ite_rec(var_node(v), or_rec(g1, gd), or_rec(g0, gd));
  return cover;
}

std::vector<CubeTerm> Manager::isop_cover(const Bdd& f) {
  check_operand(f);
  housekeeping();
  DepthGuard guard(op_depth_);
  NodeId cover_bdd = kFalseNode;
  auto cover = isop_rec(f.id(), f.id(), &cover_bdd);
  assert(cover_bdd == f.id());  // exact cover when lower == upper
  return cover;
}

bool Manager::eval(const Bdd& f, const std::vector<bool>& assignment) const {
  check_operand(f);
  if (assignment.size() < num_vars_)
    throw std::invalid_argument("assignment must cover all variables");
  NodeId n = f.id();
  while (!is_terminal(n))
    n = assignment[nodes_[n].var] ? nodes_[n].hi : nodes_[n].lo;
  return n == kTrueNode;
}

std::optional<CubeTerm> Manager::pick_cube(const Bdd& f) const {
  check_operand(f);
  if (f.id() == kFalseNode) return std::nullopt;
  CubeTerm cube;
  NodeId n = f.id();
  while (!is_terminal(n)) {
    if (nodes_[n].hi != kFalseNode) {
      cube.emplace_back(nodes_[n].var, true);
      n = nodes_[n].hi;
    } else {
      cube.emplace_back(nodes_[n].var, false);
      n = nodes_[n].lo;
    }
  }
  return cube;
}

VarId Manager::top_var(const Bdd& f) const {
  check_operand(f);
  if (is_terminal(f.id())) throw std::logic_error("constant BDD has no top variable");
  return nodes_[f.id()].var;
}

Bdd Manager::high(const Bdd& f) {
  check_operand(f);
  if (is_terminal(f.id())) throw std::logic_error("constant BDD has no cofactors");
  return adopt(nodes_[f.id()].hi);
}

Bdd Manager::low(const Bdd& f) {
  check_operand(f);
  if (is_terminal(f.id())) throw std::logic_error("constant BDD has no cofactors");
  return adopt(nodes_[f.id()].lo);
}

std::vector<VarId> Manager::support(const Bdd& f) const {
  check_operand(f);
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<bool> in_support(num_vars_, false);
  std::vector<NodeId> stack{f.id()};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    in_support[nodes_[n].var] = true;
    stack.push_back(nodes_[n].hi);
    stack.push_back(nodes_[n].lo);
  }
  std::vector<VarId> out;
  for (VarId v = 0; v < num_vars_; ++v)
    if (in_support[v]) out.push_back(v);
  return out;
}

size_t Manager::count_from(NodeId root, std::vector<bool>& seen) const {
  std::vector<NodeId> stack{root};
  size_t count = 0;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    ++count;
    stack.push_back(nodes_[n].hi);
    stack.push_back(nodes_[n].lo);
  }
  return count;
}

size_t Manager::node_count(const Bdd& f) const {
  check_operand(f);
  std::vector<bool> seen(nodes_.size(), false);
  return count_from(f.id(), seen) + 1;  // one shared terminal
}

size_t Manager::live_node_count() const {
  std::vector<bool> seen(nodes_.size(), false);
  size_t count = 0;
  for (NodeId n = 2; n < nodes_.size(); ++n)
    if (ext_refs_[n] > 0) count += count_from(n, seen);
  return count;
}

void Manager::mark_reachable(std::vector<bool>& mark) const {
  std::vector<NodeId> stack;
  for (NodeId n = 0; n < nodes_.size(); ++n)
    if (ext_refs_[n] > 0) stack.push_back(n);
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (mark[n]) continue;
    mark[n] = true;
    if (!is_terminal(n)) {
      stack.push_back(nodes_[n].hi);
      stack.push_back(nodes_[n].lo);
    }
  }
}

void Manager::collect_garbage() {
  std::vector<bool> mark(nodes_.size(), false);
  mark[kFalseNode] = mark[kTrueNode] = true;
  mark_reachable(mark);
  for (NodeId n = 2; n < nodes_.size(); ++n) {
    if (mark[n] || nodes_[n].var == kFreeVar) continue;
    unique_[nodes_[n].var].erase(child_key(nodes_[n].hi, nodes_[n].lo));
    nodes_[n].var = kFreeVar;
    free_list_.push_back(n);
    --in_use_;
  }
  cache_.clear();
}

void Manager::housekeeping() {
  if (op_depth_ > 0) return;
  if (in_use_ > options_.gc_node_threshold) collect_garbage();
  if (options_.auto_reorder && in_use_ > 2 * size_at_last_reorder_) sift_reorder();
}

void Manager::swap_adjacent_levels(unsigned level) {
  VarId v1 = var_at_level_[level];
  VarId v2 = var_at_level_[level + 1];

  // Nodes of v1 whose children involve v2 move below; detach them first so
  // unique-table lookups during the rebuild cannot hit a stale entry.
  std::vector<NodeId> moved;
  for (const auto& [key, n] : unique_[v1]) {
    (void)key;
    if (nodes_[nodes_[n].hi].var == v2 || nodes_[nodes_[n].lo].var == v2) moved.push_back(n);
  }
  for (NodeId n : moved) unique_[v1].erase(child_key(nodes_[n].hi, nodes_[n].lo));

  for (NodeId n : moved) {
    NodeId f1 = nodes_[n].hi, f0 = nodes_[n].lo;
    NodeId f11 = nodes_[f1].var == v2 ? nodes_[f1].hi : f1;
    NodeId f10 = nodes_[f1].var == v2 ? nodes_[f1].lo : f1;
    NodeId f01 = nodes_[f0].var == v2 ? nodes_[f0].hi : f0;
    NodeId f00 = nodes_[f0].var == v2 ? nodes_[f0].lo : f0;
    NodeId hi = make_node(v1, f11, f01);
    NodeId lo = make_node(v1, f10, f00);
    assert(hi != lo);
    nodes_[n] = {v2, hi, lo};  // in-place keeps external handles valid
    bool fresh = unique_[v2].emplace(child_key(hi, lo), n).second;
    assert(fresh);
    (void)fresh;
  }

  var_at_level_[level] = v2;
  var_at_level_[level + 1] = v1;
  level_of_var_[v1] = level + 1;
  level_of_var_[v2] = level;
}

ReorderStats Manager::sift_reorder() {
  if (op_depth_ > 0) throw std::logic_error("reorder requires a quiescent manager");
  DepthGuard guard(op_depth_);
  collect_garbage();
  ReorderStats stats;
  stats.nodes_before = in_use_;

  if (num_vars_ >= 2) {
    // Sift variables in order of decreasing occupancy.
    std::vector<VarId> order(num_vars_);
    for (VarId v = 0; v < num_vars_; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](VarId a, VarId b) {
      return unique_[a].size() > unique_[b].size();
    });

    for (VarId v : order) {
      size_t best_count = in_use_;
      unsigned best_level = level_of_var_[v];
      auto record = [&]() {
        collect_garbage();
        if (in_use_ < best_count) {
          best_count = in_use_;
          best_level = level_of_var_[v];
        }
      };
      while (level_of_var_[v] > 0) {
        swap_adjacent_levels(level_of_var_[v] - 1);
        record();
      }
      while (level_of_var_[v] + 1 < num_vars_) {
        swap_adjacent_levels(level_of_var_[v]);
        record();
      }
      while (level_of_var_[v] > best_level) {
        swap_adjacent_levels(level_of_var_[v] - 1);
        collect_garbage();
      }
      assert(in_use_ == best_count);
    }
  }

  collect_garbage();
  stats.nodes_after = in_use_;
  stats.var_order = var_at_level_;
  size_at_last_reorder_ = std::max<size_t>(in_use_, 2);
  return stats;
}

std::string Manager::to_dot(const Bdd& f, const std::vector<std::string>& var_names) const {
  check_operand(f);
  std::ostringstream out;
  out << "digraph bdd {\n  rankdir=TB;\n";
  out << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeId> stack{f.id()};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    VarId v = nodes_[n].var;
    std::string label = v < var_names.size() ? var_names[v] : "x" + std::to_string(v);
    out << "  n" << n << " [label=\"" << label << "\"];\n";
    out << "  n" << n << " -> n" << nodes_[n].hi << ";\n";
    out << "  n" << n << " -> n" << nodes_[n].lo << " [style=dashed];\n";
    stack.push_back(nodes_[n].hi);
    stack.push_back(nodes_[n].lo);
  }
  out << "  root -> n" << f.id() << ";\n  root [shape=point];\n}\n";
  return out.str();
}

}  // namespace synt::bdd
