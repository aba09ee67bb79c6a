#pragma once

// Symbolic automaton: states as bit vectors over fresh variables Z, the
// transition relation as one diagram per next-state bit, acceptance as a
// diagram over Z.
//
// Variable order in the manager: z_0..z_{n-1}, then inputs, then outputs,
// each block in partition order. Bit i of a state code is z_i.

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "syft/bdd.hpp"
#include "syft/common.hpp"
#include "syft/dfa.hpp"
#include "syft/partition.hpp"

namespace syft {

using StateCode = std::uint64_t;

struct SymbolicDfa {
  std::unique_ptr<DdManager> mgr;
  Partition partition;
  std::vector<std::uint32_t> z_vars;
  std::vector<std::uint32_t> x_vars;
  std::vector<std::uint32_t> y_vars;
  StateCode z0 = 0;
  std::vector<Bdd> eta;  ///< eta[i]: next value of z_i, over Z, X, Y
  Bdd acc;               ///< over Z
  std::vector<StateCode> state_codes;
  std::unordered_map<StateCode, StateId> code_to_state;

  std::size_t num_bits() const { return z_vars.size(); }
  std::size_t num_states() const { return state_codes.size(); }

  StateCode code(StateId s) const { return state_codes.at(s); }

  std::optional<StateId> decode(StateCode z) const {
    auto it = code_to_state.find(z);
    if (it == code_to_state.end()) return std::nullopt;
    return it->second;
  }

  std::optional<StateId> decode(const std::vector<bool>& z) const {
    StateCode c = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i]) c |= StateCode{1} << i;
    return decode(c);
  }

  /// Assignment vector for the manager with Z := code and the letter's X, Y bits.
  std::vector<bool> assignment(StateCode z, Letter letter = 0) const {
    std::vector<bool> a(mgr->var_count(), false);
    for (std::size_t i = 0; i < z_vars.size(); ++i) a[z_vars[i]] = (z >> i & 1U) != 0;
    const std::size_t nx = x_vars.size();
    for (std::size_t k = 0; k < nx; ++k) a[x_vars[k]] = (letter >> k & 1U) != 0;
    for (std::size_t k = 0; k < y_vars.size(); ++k) a[y_vars[k]] = (letter >> (nx + k) & 1U) != 0;
    return a;
  }

  /// Successor code by evaluating eta.
  StateCode step(StateCode z, Letter letter) const {
    const auto a = assignment(z, letter);
    StateCode next = 0;
    for (std::size_t i = 0; i < eta.size(); ++i)
      if (mgr->eval(eta[i], a)) next |= StateCode{1} << i;
    return next;
  }

  bool accepting(StateCode z) const { return mgr->eval(acc, assignment(z)); }

  Bdd code_cube(StateCode z) const {
    Bdd c = mgr->one();
    for (std::size_t i = z_vars.size(); i-- > 0;) c &= (z >> i & 1U) ? mgr->var(z_vars[i]) : !mgr->var(z_vars[i]);
    return c;
  }
};

inline std::size_t state_bits(std::size_t num_states) {
  if (num_states <= 1) return 1;
  return static_cast<std::size_t>(std::bit_width(num_states - 1));
}

/// Binary encoding of `d`. Codes follow breadth-first order from the initial
/// state (initial = 0). Unused codes loop to themselves and are rejecting.
inline SymbolicDfa encode(const ExplicitDfa& d, std::size_t node_cap = DdManager::kDefaultNodeCap,
                          const Deadline& deadline = {}) {
  if (d.num_states() == 0) throw std::invalid_argument("encode: empty automaton");
  SymbolicDfa sd;
  sd.partition = d.partition;
  const std::size_t n = state_bits(d.num_states());
  if (n > 62) throw std::length_error("encode: too many states");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("z" + std::to_string(i));
  for (const auto& x : d.partition.inputs()) names.push_back(x);
  for (const auto& y : d.partition.outputs()) names.push_back(y);
  sd.mgr = std::make_unique<DdManager>(std::move(names), node_cap);
  sd.mgr->set_deadline(deadline);
  DdManager& m = *sd.mgr;
  for (std::uint32_t i = 0; i < n; ++i) sd.z_vars.push_back(i);
  for (std::size_t k = 0; k < d.partition.num_inputs(); ++k) sd.x_vars.push_back(static_cast<std::uint32_t>(n + k));
  for (std::size_t k = 0; k < d.partition.num_outputs(); ++k)
    sd.y_vars.push_back(static_cast<std::uint32_t>(n + d.partition.num_inputs() + k));

  // Reachable states first in BFS order, any unreachable ones after.
  std::vector<StateId> order = bfs_order(d);
  {
    std::vector<bool> placed(d.num_states(), false);
    for (StateId s : order) placed[s] = true;
    for (StateId s = 0; s < d.num_states(); ++s)
      if (!placed[s]) order.push_back(s);
  }
  sd.state_codes.assign(d.num_states(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    sd.state_codes[order[k]] = k;
    sd.code_to_state.emplace(k, order[k]);
  }
  sd.z0 = sd.state_codes[d.initial];

  // Letter bit k of the DFA maps to input k or output k - |X|.
  auto letter_var = [&](std::uint32_t bit) {
    return bit < sd.x_vars.size() ? sd.x_vars[bit] : sd.y_vars[bit - sd.x_vars.size()];
  };

  sd.eta.assign(n, m.zero());
  sd.acc = m.zero();
  Bdd used = m.zero();
  for (StateId s = 0; s < d.num_states(); ++s) {
    deadline.check();
    const Bdd here = sd.code_cube(sd.state_codes[s]);
    used |= here;
    if (d.accepting[s]) sd.acc |= here;
    for (std::size_t i = 0; i < n; ++i) {
      std::unordered_map<TransitionDiagram::NodeId, Bdd> memo;
      std::function<Bdd(TransitionDiagram::NodeId)> bit_of = [&](TransitionDiagram::NodeId u) -> Bdd {
        if (auto it = memo.find(u); it != memo.end()) return it->second;
        Bdd r;
        if (d.diagram.is_leaf(u))
          r = m.constant((sd.state_codes[d.diagram.target(u)] >> i & 1U) != 0);
        else
          r = m.ite(m.var(letter_var(d.diagram.bit(u))), bit_of(d.diagram.hi(u)), bit_of(d.diagram.lo(u)));
        memo.emplace(u, r);
        return r;
      };
      sd.eta[i] |= here & bit_of(d.transition_root[s]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) sd.eta[i] |= (!used) & m.var(sd.z_vars[i]);
  return sd;
}

}  // namespace syft
