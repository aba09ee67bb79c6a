#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "syft/common.hpp"
#include "syft/formula.hpp"
#include "syft/partition.hpp"

namespace syft {

/// Shared multi-terminal decision diagram over letter bits. Each DFA state
/// owns a root whose leaves are successor states, so a state's outgoing
/// transitions for all 2^|P| letters are stored as one reduced diagram.
class TransitionDiagram {
 public:
  using NodeId = std::uint32_t;
  static constexpr std::uint32_t kLeaf = ~std::uint32_t{0};

  NodeId leaf(StateId target) { return intern({kLeaf, target, target}); }

  NodeId branch(std::uint32_t bit, NodeId lo, NodeId hi) {
    if (lo == hi) return lo;
    return intern({bit, lo, hi});
  }

  bool is_leaf(NodeId n) const { return nodes_[n].bit == kLeaf; }
  StateId target(NodeId n) const { return nodes_[n].lo; }
  std::uint32_t bit(NodeId n) const { return nodes_[n].bit; }
  NodeId lo(NodeId n) const { return nodes_[n].lo; }
  NodeId hi(NodeId n) const { return nodes_[n].hi; }
  std::size_t size() const { return nodes_.size(); }

  StateId lookup(NodeId n, Letter letter) const {
    while (!is_leaf(n)) n = (letter >> nodes_[n].bit & 1U) ? nodes_[n].hi : nodes_[n].lo;
    return target(n);
  }

  /// Visits every path as (care mask, value mask, target), low branch first.
  void for_each_cube(NodeId root, const std::function<void(Letter, Letter, StateId)>& fn) const {
    std::function<void(NodeId, Letter, Letter)> rec = [&](NodeId n, Letter care, Letter value) {
      if (is_leaf(n)) {
        fn(care, value, target(n));
        return;
      }
      const Letter b = Letter{1} << nodes_[n].bit;
      rec(nodes_[n].lo, care | b, value);
      rec(nodes_[n].hi, care | b, value | b);
    };
    rec(root, 0, 0);
  }

  /// Distinct targets in depth-first, low-first order.
  std::vector<StateId> targets(NodeId root) const {
    std::vector<StateId> out;
    std::unordered_map<NodeId, bool> seen;
    std::function<void(NodeId)> rec = [&](NodeId n) {
      if (!seen.emplace(n, true).second) return;
      if (is_leaf(n)) {
        if (std::find(out.begin(), out.end(), target(n)) == out.end()) out.push_back(target(n));
        return;
      }
      rec(nodes_[n].lo);
      rec(nodes_[n].hi);
    };
    rec(root);
    return out;
  }

  /// Copies the diagram rooted at `root` into `into` with leaves relabelled.
  NodeId relabel(NodeId root, const std::function<StateId(StateId)>& map, TransitionDiagram& into,
                 std::unordered_map<NodeId, NodeId>& memo) const {
    if (auto it = memo.find(root); it != memo.end()) return it->second;
    NodeId r;
    if (is_leaf(root))
      r = into.leaf(map(target(root)));
    else
      r = into.branch(nodes_[root].bit, relabel(nodes_[root].lo, map, into, memo),
                      relabel(nodes_[root].hi, map, into, memo));
    memo.emplace(root, r);
    return r;
  }

 private:
  struct Node {
    std::uint32_t bit;
    std::uint32_t lo;
    std::uint32_t hi;
  };

  NodeId intern(Node n) {
    const std::uint64_t key = (std::uint64_t{n.bit} * 0x9e3779b97f4a7c15ULL) ^ (std::uint64_t{n.lo} << 32 | n.hi);
    auto [lo, hi] = unique_.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      const Node& m = nodes_[it->second];
      if (m.bit == n.bit && m.lo == n.lo && m.hi == n.hi) return it->second;
    }
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(n);
    unique_.emplace(key, id);
    return id;
  }

  std::vector<Node> nodes_;
  std::unordered_multimap<std::uint64_t, NodeId> unique_;
};

/// DFA game arena over the alphabet 2^P, P ordered by `partition`.
struct ExplicitDfa {
  Partition partition;
  StateId initial = 0;
  std::vector<Formula> residual;  ///< defining obligation of each state
  std::vector<bool> accepting;
  std::vector<TransitionDiagram::NodeId> transition_root;
  TransitionDiagram diagram;

  std::size_t num_states() const { return accepting.size(); }
  std::size_t num_atoms() const { return partition.num_atoms(); }
  bool is_accepting(StateId s) const { return accepting[s]; }
  StateId next(StateId s, Letter letter) const { return diagram.lookup(transition_root[s], letter); }
  std::vector<StateId> successors(StateId s) const { return diagram.targets(transition_root[s]); }

  /// Acceptance of a finite word (a letter sequence).
  bool accepts(const std::vector<Letter>& word) const {
    StateId s = initial;
    for (Letter l : word) s = next(s, l);
    return accepting[s];
  }

  /// Appends a state and returns its index.
  StateId add_state(Formula residual_formula, bool is_accepting_state) {
    residual.push_back(std::move(residual_formula));
    accepting.push_back(is_accepting_state);
    transition_root.push_back(0);
    return static_cast<StateId>(accepting.size() - 1);
  }
};

inline void require_explicit_alphabet_width(std::size_t num_atoms) {
  if (num_atoms > kMaxExplicitAtoms)
    throw std::length_error("alphabet too large for explicit enumeration (" + std::to_string(num_atoms) +
                            " atoms, limit " + std::to_string(kMaxExplicitAtoms) + ")");
}

inline void require_explicit_alphabet(const ExplicitDfa& d) { require_explicit_alphabet_width(d.num_atoms()); }

/// States in breadth-first order from the initial state, successors taken in
/// diagram order.
inline std::vector<StateId> bfs_order(const ExplicitDfa& d) {
  std::vector<StateId> order{d.initial};
  std::vector<bool> seen(d.num_states(), false);
  seen[d.initial] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (StateId t : d.successors(order[k]))
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
  return order;
}

namespace detail {

inline std::string cube_label(Letter care, Letter value, const std::vector<std::string>& atoms) {
  if (care == 0) return "true";
  std::string s;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!(care >> k & 1U)) continue;
    if (!s.empty()) s += " & ";
    if (!(value >> k & 1U)) s += '!';
    s += atoms[k];
  }
  return s;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz digraph; one edge per (source, target) labelled with the letter
/// set as a disjunction of cubes; accepting states are double circles.
inline std::string export_dot(const ExplicitDfa& d) {
  const auto atoms = d.partition.atoms();
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (StateId s = 0; s < d.num_states(); ++s) {
    os << "  s" << s << " [shape=" << (d.accepting[s] ? "doublecircle" : "circle") << ",tooltip=\""
       << detail::dot_escape(to_string(d.residual[s])) << "\"];\n";
  }
  os << "  init -> s" << d.initial << ";\n";
  for (StateId s = 0; s < d.num_states(); ++s) {
    std::map<StateId, std::vector<std::string>> groups;
    d.diagram.for_each_cube(d.transition_root[s], [&](Letter care, Letter value, StateId t) {
      groups[t].push_back(detail::cube_label(care, value, atoms));
    });
    for (const auto& [t, cubes] : groups) {
      std::string label;
      for (const auto& c : cubes) label += (label.empty() ? "" : " | ") + c;
      os << "  s" << s << " -> s" << t << " [label=\"" << detail::dot_escape(label) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Plain table: `states N initial I`, one `src bits dst` line per letter,
/// then `accepting: ...`. Letter bits follow partition order, first atom leftmost.
inline std::string export_table(const ExplicitDfa& d) {
  require_explicit_alphabet(d);
  const std::size_t width = d.num_atoms();
  std::ostringstream os;
  os << "states " << d.num_states() << " initial " << d.initial << "\n";
  for (StateId s = 0; s < d.num_states(); ++s)
    for (Letter l = 0; l < (Letter{1} << width); ++l)
      os << s << ' ' << bits_to_string(l, width) << ' ' << d.next(s, l) << "\n";
  os << "accepting:";
  for (StateId s = 0; s < d.num_states(); ++s)
    if (d.accepting[s]) os << ' ' << s;
  os << "\n";
  return os.str();
}

}  // namespace syft
