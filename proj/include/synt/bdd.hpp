#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace synt::bdd {

using VarId = unsigned;
using NodeId = uint32_t;

class Manager;

/// External handle to a node in one manager. Handles are reference-counted;
/// two handles denote the same Boolean function iff they compare equal.
/// The manager must outlive every handle it issued.
class Bdd {
public:
  Bdd() = default;
  Bdd(const Bdd& other);
  Bdd(Bdd&& other) noexcept;
  Bdd& operator=(const Bdd& other);
  Bdd& operator=(Bdd&& other) noexcept;
  ~Bdd();

  bool valid() const { return mgr_ != nullptr; }
  Manager* manager() const { return mgr_; }
  NodeId id() const { return node_; }

  bool is_false() const;
  bool is_true() const;
  bool is_constant() const { return is_false() || is_true(); }

  VarId top_var() const;  // throws std::logic_error on constants
  Bdd high() const;
  Bdd low() const;

  Bdd operator!() const;
  Bdd operator&(const Bdd& o) const;
  Bdd operator|(const Bdd& o) const;
  Bdd operator^(const Bdd& o) const;
  Bdd implies(const Bdd& o) const;
  Bdd iff(const Bdd& o) const;

  friend bool operator==(const Bdd& a, const Bdd& b) {
    return a.mgr_ == b.mgr_ && a.node_ == b.node_;
  }
  friend bool operator!=(const Bdd& a, const Bdd& b) = default;

private:
  friend class Manager;
  Bdd(Manager* mgr, NodeId node);

  Manager* mgr_ = nullptr;
  NodeId node_ = 0;
};

struct ReorderStats {
  size_t nodes_before = 0;
  size_t nodes_after = 0;
  std::vector<VarId> var_order;  // resulting order, level 0 first
};

/// One product term of a sum-of-products cover.
using CubeTerm = std::vector<std::pair<VarId, bool>>;

/// Reduced ordered BDDs without complement edges. Canonical form: no node
/// has equal children and no two nodes share (var, hi, lo). A manager is a
/// single-threaded object; distinct managers are independent.
class Manager {
public:
  struct Options {
    size_t gc_node_threshold = size_t{1} << 20;  // automatic GC above this
    bool use_computed_cache = true;
    bool auto_reorder = false;  // sift when the store doubles since last reorder
  };

  explicit Manager(unsigned num_vars);
  Manager(unsigned num_vars, Options options);
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  unsigned num_vars() const { return num_vars_; }

  Bdd constant(bool value);
  Bdd var(VarId v);  // throws std::out_of_range for unregistered variables

  Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);
  Bdd apply_and(const Bdd& f, const Bdd& g);
  Bdd apply_or(const Bdd& f, const Bdd& g);
  Bdd apply_xor(const Bdd& f, const Bdd& g);
  Bdd apply_not(const Bdd& f);

  Bdd exists(const Bdd& f, std::span<const VarId> vars);
  Bdd forall(const Bdd& f, std::span<const VarId> vars);

  /// Simultaneous substitution of variables by functions.
  Bdd compose(const Bdd& f, const std::vector<std::pair<VarId, Bdd>>& substitution);

  /// Coudert-Madre restrict: agrees with f on the care set, free elsewhere.
  Bdd restrict_to(const Bdd& f, const Bdd& care);

  /// Irredundant sum-of-products cover of f (Minato's procedure).
  std::vector<CubeTerm> isop_cover(const Bdd& f);

  /// Rudell-style sifting over all variables. Requires a quiescent manager;
  /// keeps the earliest best position per variable, so the live node count
  /// never increases. Clears the computed cache.
  ReorderStats sift_reorder();

  bool eval(const Bdd& f, const std::vector<bool>& assignment_by_var) const;
  std::optional<CubeTerm> pick_cube(const Bdd& f) const;  // nullopt iff f is false
  std::vector<VarId> support(const Bdd& f) const;

  VarId top_var(const Bdd& f) const;
  Bdd high(const Bdd& f);
  Bdd low(const Bdd& f);

  /// Internal nodes reachable from f plus the one shared terminal.
  size_t node_count(const Bdd& f) const;
  /// Internal nodes reachable from any live external handle.
  size_t live_node_count() const;
  size_t allocated_node_count() const { return in_use_; }

  void collect_garbage();

  std::string to_dot(const Bdd& f, const std::vector<std::string>& var_names = {}) const;

  const std::vector<VarId>& current_order() const { return var_at_level_; }

private:
  friend class Bdd;

  static constexpr VarId kTermVar = std::numeric_limits<VarId>::max();
  static constexpr VarId kFreeVar = kTermVar - 1;
  static constexpr NodeId kFalseNode = 0;
  static constexpr NodeId kTrueNode = 1;

  struct Node {
    VarId var;
    NodeId hi;
    NodeId lo;
  };

  struct CacheKey {
    uint8_t op;
    NodeId a, b, c;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
  };
  struct CacheKeyHash {
    size_t operator()(const CacheKey& k) const {
      uint64_t x = (uint64_t(k.op) << 56) ^ (uint64_t(k.a) << 33) ^ (uint64_t(k.b) << 11) ^ k.c;
      x ^= x >> 33;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 29;
      return static_cast<size_t>(x);
    }
  };
  enum Op : uint8_t { kOpIte = 1, kOpExists = 2 };

  // ---- node store ----
  bool is_terminal(NodeId n) const { return n <= kTrueNode; }
  unsigned level_of(NodeId n) const {
    VarId v = nodes_[n].var;
    return v == kTermVar ? num_vars_ : level_of_var_[v];
  }
  NodeId cofactor(NodeId n, unsigned level, bool high) const {
    if (level_of(n) != level) return n;
    return high ? nodes_[n].hi : nodes_[n].lo;
  }
  static uint64_t child_key(NodeId hi, NodeId lo) { return (uint64_t(hi) << 32) | lo; }

  NodeId make_node(VarId var, NodeId hi, NodeId lo);
  NodeId var_node(VarId v);

  void check_var(VarId v) const;
  void check_operand(const Bdd& f) const;
  Bdd adopt(NodeId n) { return Bdd(this, n); }

  void inc_ext_ref(NodeId n) { ++ext_refs_[n]; }
  void dec_ext_ref(NodeId n) { --ext_refs_[n]; }

  // ---- recursion workers (no housekeeping inside) ----
  NodeId ite_rec(NodeId f, NodeId g, NodeId h);
  NodeId not_rec(NodeId f) { return ite_rec(f, kFalseNode, kTrueNode); }
  NodeId or_rec(NodeId f, NodeId g) { return ite_rec(f, kTrueNode, g); }
  NodeId and_rec(NodeId f, NodeId g) { return ite_rec(f, g, kFalseNode); }
  NodeId exists_rec(NodeId f, NodeId cube);
  NodeId compose_rec(NodeId f, const std::vector<NodeId>& by_var,
                     std::unordered_map<NodeId, NodeId>& memo);
  NodeId restrict_rec(NodeId f, NodeId care,
                      std::unordered_map<uint64_t, NodeId>& memo);
  std::vector<CubeTerm> isop_rec(NodeId lower, NodeId upper, NodeId* cover_bdd);

  NodeId cube_of(std::span<const VarId> vars);

  // ---- maintenance ----
  void housekeeping();
  void mark_reachable(std::vector<bool>& mark) const;
  size_t count_from(NodeId root, std::vector<bool>& seen) const;
  void swap_adjacent_levels(unsigned level);

  unsigned num_vars_;
  Options options_;
  std::vector<Node> nodes_;
  std::vector<uint32_t> ext_refs_;
  std::vector<NodeId> free_list_;
  size_t in_use_ = 0;  // allocated internal nodes (live + not yet collected)
  std::vector<std::unordered_map<uint64_t, NodeId>> unique_;  // per variable
  std::unordered_map<CacheKey, NodeId, CacheKeyHash> cache_;
  std::vector<unsigned> level_of_var_;
  std::vector<VarId> var_at_level_;
  size_t size_at_last_reorder_ = 2;
  unsigned op_depth_ = 0;
};

// ---- inline handle plumbing ----

inline Bdd::Bdd(Manager* mgr, NodeId node) : mgr_(mgr), node_(node) {
  if (mgr_) mgr_->inc_ext_ref(node_);
}
inline Bdd::Bdd(const Bdd& other) : mgr_(other.mgr_), node_(other.node_) {
  if (mgr_) mgr_->inc_ext_ref(node_);
}
inline Bdd::Bdd(Bdd&& other) noexcept : mgr_(other.mgr_), node_(other.node_) {
  other.mgr_ = nullptr;
  other.node_ = 0;
}
inline Bdd& Bdd::operator=(const Bdd& other) {
  if (this != &other) {
    if (other.mgr_) other.mgr_->inc_ext_ref(other.node_);
    if (mgr_) mgr_->dec_ext_ref(node_);
    mgr_ = other.mgr_;
    node_ = other.node_;
  }
  return *this;
}
inline Bdd& Bdd::operator=(Bdd&& other) noexcept {
  if (this != &other) {
    if (mgr_) mgr_->dec_ext_ref(node_);
    mgr_ = other.mgr_;
    node_ = other.node_;
    other.mgr_ = nullptr;
    other.node_ = 0;
  }
  return *this;
}
inline Bdd::~Bdd() {
  if (mgr_) mgr_->dec_ext_ref(node_);
}

inline bool Bdd::is_false() const { return mgr_ && node_ == 0; }
inline bool Bdd::is_true() const { return mgr_ && node_ == 1; }

inline VarId Bdd::top_var() const { return mgr_->top_var(*this); }
inline Bdd Bdd::high() const { return mgr_->high(*this); }
inline Bdd Bdd::low() const { return mgr_->low(*this); }

inline Bdd Bdd::operator!() const { return mgr_->apply_not(*this); }
inline Bdd Bdd::operator&(const Bdd& o) const { return mgr_->apply_and(*this, o); }
inline Bdd Bdd::operator|(const Bdd& o) const { return mgr_->apply_or(*this, o); }
inline Bdd Bdd::operator^(const Bdd& o) const { return mgr_->apply_xor(*this, o); }
inline Bdd Bdd::implies(const Bdd& o) const { return mgr_->ite(*this, o, mgr_->constant(true)); }
inline Bdd Bdd::iff(const Bdd& o) const { return !(*this ^ o); }

}  // namespace synt::bdd
