#pragma once

// Reduced ordered binary decision diagrams.
//
// A DdManager owns every node. Nodes are hash-consed through a unique table,
// so two handles denote the same boolean function iff they carry the same id.
// The variable order is fixed when the manager is created. There are no
// complemented edges and no garbage collection; a manager lives as long as
// the computation that uses it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "syft/common.hpp"

namespace syft {

class DdManager;

class NodeCapExceeded : public std::runtime_error {
 public:
  explicit NodeCapExceeded(std::size_t cap)
      : std::runtime_error("decision diagram node cap exceeded (" + std::to_string(cap) + " nodes)") {}
};

/// Handle to a boolean function inside a DdManager.
class Bdd {
 public:
  Bdd() = default;
  Bdd(DdManager* m, std::uint32_t id) : mgr_(m), id_(id) {}

  DdManager* manager() const { return mgr_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return mgr_ != nullptr; }

  bool is_zero() const { return id_ == 0; }
  bool is_one() const { return id_ == 1; }
  bool is_constant() const { return id_ <= 1; }

  /// Top variable index; undefined for constants.
  std::uint32_t var() const;
  Bdd low() const;
  Bdd high() const;

  Bdd operator!() const;
  Bdd operator&(const Bdd& o) const;
  Bdd operator|(const Bdd& o) const;
  Bdd operator^(const Bdd& o) const;
  Bdd& operator&=(const Bdd& o) { return *this = *this & o; }
  Bdd& operator|=(const Bdd& o) { return *this = *this | o; }

  friend bool operator==(const Bdd& a, const Bdd& b) { return a.mgr_ == b.mgr_ && a.id_ == b.id_; }
  friend bool operator!=(const Bdd& a, const Bdd& b) { return !(a == b); }

 private:
  DdManager* mgr_ = nullptr;
  std::uint32_t id_ = 0;
};

class DdManager {
 public:
  static constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 24;
  static constexpr std::uint32_t kTerminalVar = std::numeric_limits<std::uint32_t>::max();

  explicit DdManager(std::vector<std::string> var_names, std::size_t node_cap = kDefaultNodeCap)
      : names_(std::move(var_names)), node_cap_(node_cap) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<std::uint32_t>(i)).second)
        throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
    }
    nodes_.push_back({kTerminalVar, 0, 0});
    nodes_.push_back({kTerminalVar, 1, 1});
    grow_unique();
  }

  DdManager(const DdManager&) = delete;
  DdManager& operator=(const DdManager&) = delete;

  /// Checked periodically while nodes are created.
  void set_deadline(Deadline d) { deadline_ = d; }

  std::size_t var_count() const { return names_.size(); }
  const std::string& var_name(std::uint32_t v) const { return names_.at(v); }
  std::optional<std::uint32_t> var_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Total nodes allocated, including the two terminals.
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t node_cap() const { return node_cap_; }

  Bdd zero() { return {this, 0}; }
  Bdd one() { return {this, 1}; }
  Bdd constant(bool b) { return {this, b ? 1U : 0U}; }

  Bdd var(std::uint32_t v) {
    if (v >= names_.size()) throw std::out_of_range("unknown variable index " + std::to_string(v));
    return {this, mk(v, 0, 1)};
  }

  Bdd var(std::string_view name) {
    auto v = var_index(name);
    if (!v) throw std::out_of_range("unknown variable '" + std::string(name) + "'");
    return var(*v);
  }

  /// Conjunction of literals: vars[k] with polarity values[k].
  Bdd cube(const std::vector<std::uint32_t>& vars, const std::vector<bool>& values) {
    Bdd r = one();
    for (std::size_t k = vars.size(); k-- > 0;) r &= values[k] ? var(vars[k]) : !var(vars[k]);
    return r;
  }

  std::uint32_t top_var(const Bdd& f) const { return nodes_[f.id()].var; }
  Bdd low(const Bdd& f) { return {this, nodes_[f.id()].lo}; }
  Bdd high(const Bdd& f) { return {this, nodes_[f.id()].hi}; }

  /// (g & h) | (!g & e)
  Bdd ite(const Bdd& g, const Bdd& h, const Bdd& e) {
    own(g);
    own(h);
    own(e);
    return {this, ite_rec(g.id(), h.id(), e.id())};
  }

  Bdd apply_not(const Bdd& f) { return ite(f, zero(), one()); }
  Bdd apply_and(const Bdd& f, const Bdd& g) { return ite(f, g, zero()); }
  Bdd apply_or(const Bdd& f, const Bdd& g) { return ite(f, one(), g); }
  Bdd apply_xor(const Bdd& f, const Bdd& g) { return ite(f, apply_not(g), g); }

  /// Cofactor f[v := value].
  Bdd restrict(const Bdd& f, std::uint32_t v, bool value) {
    own(f);
    begin_memo();
    return {this, restrict_rec(f.id(), v, value)};
  }

  Bdd exists(const std::vector<std::uint32_t>& vars, const Bdd& f) { return quantify(vars, f, true); }
  Bdd forall(const std::vector<std::uint32_t>& vars, const Bdd& f) { return quantify(vars, f, false); }

  /// Simultaneous substitution. `sub[v]`, when valid, replaces variable v;
  /// variables past the end of `sub` or mapped to an invalid handle are kept.
  Bdd compose(const Bdd& f, const std::vector<Bdd>& sub) {
    own(f);
    std::vector<std::uint32_t> ids(sub.size(), kNoSub);
    for (std::size_t v = 0; v < sub.size(); ++v) {
      if (!sub[v].valid()) continue;
      own(sub[v]);
      ids[v] = sub[v].id();
    }
    begin_memo();
    return {this, compose_rec(f.id(), ids)};
  }

  /// compose() applied to several functions with one shared memo.
  std::vector<Bdd> compose(const std::vector<Bdd>& fs, const std::vector<Bdd>& sub) {
    std::vector<std::uint32_t> ids(sub.size(), kNoSub);
    for (std::size_t v = 0; v < sub.size(); ++v) {
      if (!sub[v].valid()) continue;
      own(sub[v]);
      ids[v] = sub[v].id();
    }
    begin_memo();
    std::vector<Bdd> out;
    for (const Bdd& f : fs) {
      own(f);
      out.push_back({this, compose_rec(f.id(), ids)});
    }
    return out;
  }

  /// Evaluates f; `value_of(var)` supplies the assignment along the path.
  template <class Assignment>
  bool eval_with(const Bdd& f, Assignment&& value_of) const {
    std::uint32_t u = f.id();
    while (nodes_[u].var != kTerminalVar) u = value_of(nodes_[u].var) ? nodes_[u].hi : nodes_[u].lo;
    return u == 1;
  }

  /// Evaluates f under a total assignment indexed by variable.
  bool eval(const Bdd& f, const std::vector<bool>& assignment) const {
    return eval_with(f, [&](std::uint32_t v) {
      if (v >= assignment.size()) throw std::out_of_range("assignment misses variable " + names_[v]);
      return static_cast<bool>(assignment[v]);
    });
  }

  /// Evaluates f under a named assignment; throws if a variable on the
  /// evaluated path is unassigned.
  bool eval(const Bdd& f, const std::unordered_map<std::string, bool>& assignment) const {
    return eval_with(f, [&](std::uint32_t v) {
      auto it = assignment.find(names_[v]);
      if (it == assignment.end()) throw std::out_of_range("assignment misses variable " + names_[v]);
      return it->second;
    });
  }

  std::vector<std::uint32_t> support(const Bdd& f) const {
    std::vector<bool> seen_var(names_.size(), false);
    std::vector<std::uint32_t> stack{f.id()};
    std::unordered_map<std::uint32_t, bool> seen;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      if (nodes_[u].var == kTerminalVar || !seen.emplace(u, true).second) continue;
      seen_var[nodes_[u].var] = true;
      stack.push_back(nodes_[u].lo);
      stack.push_back(nodes_[u].hi);
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < names_.size(); ++v)
      if (seen_var[v]) out.push_back(v);
    return out;
  }

  /// Number of nodes reachable from f, terminals included.
  std::size_t dag_size(const Bdd& f) const {
    std::vector<std::uint32_t> stack{f.id()};
    std::unordered_map<std::uint32_t, bool> seen;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      if (!seen.emplace(u, true).second) continue;
      if (nodes_[u].var != kTerminalVar) {
        stack.push_back(nodes_[u].lo);
        stack.push_back(nodes_[u].hi);
      }
    }
    return seen.size();
  }

  /// Boolean synthesis. Returns gamma_1..gamma_m for outputs y_1..y_m such
  /// that whenever some output assignment satisfies f under input I, setting
  /// y_j := gamma_j(I, gamma_1..gamma_{j-1}) does too. gamma_j mentions only
  /// variables outside {y_j..y_m}. Ties prefer y_j = 0; inputs without any
  /// witness get 0.
  std::vector<Bdd> solve_outputs(const Bdd& f, const std::vector<std::uint32_t>& outputs) {
    own(f);
    for (std::uint32_t y : outputs)
      if (y >= names_.size()) throw std::out_of_range("unknown output variable index " + std::to_string(y));
    const std::size_t m = outputs.size();
    // prefix[j] = exists y_{j+1}..y_m . f, a function of the inputs and y_1..y_j.
    std::vector<Bdd> prefix(m + 1);
    prefix[m] = f;
    for (std::size_t j = m; j-- > 0;) prefix[j] = exists({outputs[j]}, prefix[j + 1]);
    std::vector<Bdd> gamma(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Bdd& fj = prefix[j + 1];
      gamma[j] = restrict(fj, outputs[j], true) & !restrict(fj, outputs[j], false);
    }
    return gamma;
  }

  /// Substitutes earlier witnesses into later ones so every returned function
  /// depends on the inputs only.
  std::vector<Bdd> resolve_outputs(const std::vector<Bdd>& gamma, const std::vector<std::uint32_t>& outputs) {
    std::vector<Bdd> sub(names_.size());
    std::vector<Bdd> out;
    out.reserve(gamma.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      out.push_back(compose(gamma[j], sub));
      sub[outputs[j]] = out.back();
    }
    return out;
  }

  /// Graphviz rendering: solid high edges, dashed low edges.
  std::string to_dot(const Bdd& f, std::string_view graph_name = "bdd") const {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n";
    os << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
    std::vector<std::uint32_t> stack{f.id()};
    std::unordered_map<std::uint32_t, bool> seen;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      if (nodes_[u].var == kTerminalVar || !seen.emplace(u, true).second) continue;
      const Node& n = nodes_[u];
      os << "  n" << u << " [label=\"" << names_[n.var] << "\"];\n";
      os << "  n" << u << " -> n" << n.hi << ";\n";
      os << "  n" << u << " -> n" << n.lo << " [style=dashed];\n";
      stack.push_back(n.lo);
      stack.push_back(n.hi);
    }
    os << "}\n";
    return os.str();
  }

 private:
  friend class Bdd;

  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };

  void own(const Bdd& f) const {
    if (f.manager() != this) throw std::invalid_argument("diagram belongs to a different manager");
  }

  static std::size_t hash3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
    h ^= (b + 0x632be59bd9b4e019ULL) * 0xbf58476d1ce4e5b9ULL;
    h ^= (c + 0x85ebca77c2b2ae63ULL) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  // Unique table: open addressing over node ids, 0 marks an empty slot (the
  // terminals are never stored).
  void grow_unique() {
    std::vector<std::uint32_t> fresh(unique_.empty() ? 1024 : unique_.size() * 2, 0);
    const std::size_t mask = fresh.size() - 1;
    for (std::uint32_t id : unique_) {
      if (id == 0) continue;
      const Node& n = nodes_[id];
      std::size_t i = hash3(n.var, n.lo, n.hi) & mask;
      while (fresh[i] != 0) i = (i + 1) & mask;
      fresh[i] = id;
    }
    unique_.swap(fresh);
    // Computed tables scale with the diagram population.
    const std::size_t want = std::min<std::size_t>(unique_.size(), std::size_t{1} << 22);
    if (want > ite_cache_.size()) {
      ite_cache_.assign(want, CacheEntry{});
      quant_cache_.assign(want, CacheEntry{});
    }
  }

  std::uint32_t mk(std::uint32_t v, std::uint32_t lo, std::uint32_t hi) {
    if (lo == hi) return lo;
    if (2 * (nodes_.size() + 1) > unique_.size()) grow_unique();
    const std::size_t mask = unique_.size() - 1;
    std::size_t i = hash3(v, lo, hi) & mask;
    for (; unique_[i] != 0; i = (i + 1) & mask) {
      const Node& n = nodes_[unique_[i]];
      if (n.var == v && n.lo == lo && n.hi == hi) return unique_[i];
    }
    if (nodes_.size() >= node_cap_) throw NodeCapExceeded(node_cap_);
    if ((nodes_.size() & 0xffff) == 0) deadline_.check();
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({v, lo, hi});
    unique_[i] = id;
    return id;
  }

  struct CacheEntry {
    std::uint32_t a = kNoSub, b = 0, c = 0, r = 0;
  };

  static const CacheEntry* cache_find(const std::vector<CacheEntry>& t, std::uint32_t a, std::uint32_t b,
                                      std::uint32_t c) {
    const CacheEntry& e = t[hash3(a, b, c) & (t.size() - 1)];
    return e.a == a && e.b == b && e.c == c ? &e : nullptr;
  }

  static void cache_put(std::vector<CacheEntry>& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                        std::uint32_t r) {
    t[hash3(a, b, c) & (t.size() - 1)] = {a, b, c, r};
  }

  static constexpr std::uint32_t kNoSub = std::numeric_limits<std::uint32_t>::max();

  // Per-operation memo indexed by node id. Entries are valid only when their
  // stamp equals the current epoch, so starting an operation is O(1).
  void begin_memo() {
    if (++epoch_ == 0) {
      std::fill(memo_stamp_.begin(), memo_stamp_.end(), 0);
      epoch_ = 1;
    }
  }

  const std::uint32_t* memo_find(std::uint32_t u) const {
    return u < memo_stamp_.size() && memo_stamp_[u] == epoch_ ? &memo_val_[u] : nullptr;
  }

  void memo_put(std::uint32_t u, std::uint32_t r) {
    if (u >= memo_stamp_.size()) {
      const std::size_t n = std::max<std::size_t>(nodes_.size(), 2 * std::size_t{u} + 1);
      memo_stamp_.resize(n, 0);
      memo_val_.resize(n, 0);
    }
    memo_stamp_[u] = epoch_;
    memo_val_[u] = r;
  }

  std::uint32_t compose_rec(std::uint32_t u, const std::vector<std::uint32_t>& sub) {
    const Node n = nodes_[u];
    if (n.var == kTerminalVar) return u;
    if (const std::uint32_t* hit = memo_find(u)) return *hit;
    const std::uint32_t lo = compose_rec(n.lo, sub);
    const std::uint32_t hi = compose_rec(n.hi, sub);
    const std::uint32_t g = n.var < sub.size() && sub[n.var] != kNoSub ? sub[n.var] : mk(n.var, 0, 1);
    const std::uint32_t r = ite_rec(g, hi, lo);
    memo_put(u, r);
    return r;
  }

  std::uint32_t restrict_rec(std::uint32_t u, std::uint32_t v, bool value) {
    const Node n = nodes_[u];
    if (n.var == kTerminalVar || n.var > v) return u;
    if (n.var == v) return value ? n.hi : n.lo;
    if (const std::uint32_t* hit = memo_find(u)) return *hit;
    const std::uint32_t r = mk(n.var, restrict_rec(n.lo, v, value), restrict_rec(n.hi, v, value));
    memo_put(u, r);
    return r;
  }

  std::uint32_t ite_rec(std::uint32_t g, std::uint32_t h, std::uint32_t e) {
    if (g == 1) return h;
    if (g == 0) return e;
    if (h == e) return h;
    if (h == 1 && e == 0) return g;
    if (const CacheEntry* hit = cache_find(ite_cache_, g, h, e)) return hit->r;
    const std::uint32_t v = std::min({nodes_[g].var, nodes_[h].var, nodes_[e].var});
    auto cof = [&](std::uint32_t u, bool hi) {
      const Node& n = nodes_[u];
      return n.var == v ? (hi ? n.hi : n.lo) : u;
    };
    const std::uint32_t t = ite_rec(cof(g, true), cof(h, true), cof(e, true));
    const std::uint32_t f = ite_rec(cof(g, false), cof(h, false), cof(e, false));
    const std::uint32_t r = mk(v, f, t);
    cache_put(ite_cache_, g, h, e, r);
    return r;
  }

  Bdd quantify(const std::vector<std::uint32_t>& vars, const Bdd& f, bool existential) {
    own(f);
    std::vector<std::uint32_t> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::uint32_t cube_id = 1;
    for (std::size_t k = sorted.size(); k-- > 0;) {
      if (sorted[k] >= names_.size()) throw std::out_of_range("unknown variable index " + std::to_string(sorted[k]));
      cube_id = mk(sorted[k], 0, cube_id);
    }
    return {this, quant_rec(f.id(), cube_id, existential)};
  }

  std::uint32_t quant_rec(std::uint32_t f, std::uint32_t cube, bool existential) {
    const Node& fn = nodes_[f];
    if (fn.var == kTerminalVar) return f;
    while (cube != 1 && nodes_[cube].var < fn.var) cube = nodes_[cube].hi;
    if (cube == 1) return f;
    const std::uint32_t tag = existential ? 1U : 0U;
    if (const CacheEntry* hit = cache_find(quant_cache_, f, cube, tag)) return hit->r;
    const std::uint32_t v = fn.var, lo0 = fn.lo, hi0 = fn.hi;
    std::uint32_t r;
    if (nodes_[cube].var == v) {
      const std::uint32_t rest = nodes_[cube].hi;
      const std::uint32_t lo = quant_rec(lo0, rest, existential);
      if (existential && lo == 1) {
        r = 1;
      } else if (!existential && lo == 0) {
        r = 0;
      } else {
        const std::uint32_t hi = quant_rec(hi0, rest, existential);
        r = existential ? ite_rec(lo, 1, hi) : ite_rec(lo, hi, 0);
      }
    } else {
      r = mk(v, quant_rec(lo0, cube, existential), quant_rec(hi0, cube, existential));
    }
    cache_put(quant_cache_, f, cube, tag, r);
    return r;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> unique_;
  std::vector<CacheEntry> ite_cache_;
  std::vector<CacheEntry> quant_cache_;
  std::vector<std::uint32_t> memo_stamp_;
  std::vector<std::uint32_t> memo_val_;
  std::uint32_t epoch_ = 0;
  std::size_t node_cap_;
  Deadline deadline_;
};

inline std::uint32_t Bdd::var() const { return mgr_->top_var(*this); }
inline Bdd Bdd::low() const { return mgr_->low(*this); }
inline Bdd Bdd::high() const { return mgr_->high(*this); }
inline Bdd Bdd::operator!() const { return mgr_->apply_not(*this); }
inline Bdd Bdd::operator&(const Bdd& o) const { return mgr_->apply_and(*this, o); }
inline Bdd Bdd::operator|(const Bdd& o) const { return mgr_->apply_or(*this, o); }
inline Bdd Bdd::operator^(const Bdd& o) const { return mgr_->apply_xor(*this, o); }

struct BddHash {
  std::size_t operator()(const Bdd& b) const { return std::hash<std::uint32_t>{}(b.id()); }
};

}  // namespace syft
