#pragma once

// Reachability games on a DFA: the controller picks the output letter Y, then
// the environment picks the input letter X, and the controller wins once the
// play enters an accepting state. Plays are nonempty, so realizability asks
// for one forced round from the initial state into the winning region.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "syft/bdd.hpp"
#include "syft/common.hpp"
#include "syft/dfa.hpp"
#include "syft/symbolic.hpp"

namespace syft {

struct ExplicitSolution {
  std::vector<bool> winning;
  /// Winning output (Y bits) of every non-accepting winning state.
  std::vector<std::optional<Letter>> winning_output;
  /// Round in which each winning state was added; 0 for accepting states.
  std::vector<std::size_t> rank;
  bool realizable = false;

  bool is_winning(StateId s) const { return winning[s]; }
};

namespace detail {

// First Y (in increasing bit order) for which every X leads into `target`.
template <class Target>
std::optional<Letter> forcing_output(const ExplicitDfa& d, StateId s, Target&& target) {
  const Partition& p = d.partition;
  const Letter ny = Letter{1} << p.num_outputs();
  const Letter nx = Letter{1} << p.num_inputs();
  for (Letter y = 0; y < ny; ++y) {
    bool all = true;
    for (Letter x = 0; x < nx && all; ++x) all = target(d.next(s, p.join(x, y)));
    if (all) return y;
  }
  return std::nullopt;
}

}  // namespace detail

/// Winning-state expansion: start from the accepting states and add, round by
/// round, every state that has an output forcing all inputs into the current
/// region.
inline ExplicitSolution solve_explicit(const ExplicitDfa& d, const Deadline& deadline = {}) {
  require_explicit_alphabet(d);
  const std::size_t n = d.num_states();
  ExplicitSolution sol;
  sol.winning = d.accepting;
  sol.winning_output.assign(n, std::nullopt);
  sol.rank.assign(n, 0);

  for (std::size_t round = 1;; ++round) {
    std::vector<std::pair<StateId, Letter>> added;
    for (StateId s = 0; s < n; ++s) {
      if (sol.winning[s]) continue;
      deadline.check();
      if (auto y = detail::forcing_output(d, s, [&](StateId t) { return static_cast<bool>(sol.winning[t]); }))
        added.emplace_back(s, *y);
    }
    if (added.empty()) break;
    for (auto [s, y] : added) {
      sol.winning[s] = true;
      sol.winning_output[s] = y;
      sol.rank[s] = round;
    }
  }

  auto start = detail::forcing_output(d, d.initial, [&](StateId t) { return static_cast<bool>(sol.winning[t]); });
  sol.realizable = start.has_value();
  if (sol.realizable && !sol.winning_output[d.initial]) sol.winning_output[d.initial] = start;
  return sol;
}

/// Independent AND-OR game-tree search to the given depth: OR over outputs,
/// AND over inputs, won on entering an accepting state.
inline bool oracle_search(const ExplicitDfa& d, std::size_t depth) {
  require_explicit_alphabet(d);
  if (depth < d.num_states()) throw std::invalid_argument("oracle_search: depth must be at least |S|");
  const Partition& p = d.partition;
  const Letter ny = Letter{1} << p.num_outputs();
  const Letter nx = Letter{1} << p.num_inputs();
  // memo[k][s]: controller forces acceptance from s within k rounds.
  std::vector<std::vector<signed char>> memo(depth + 1, std::vector<signed char>(d.num_states(), -1));
  std::function<bool(StateId, std::size_t)> wins = [&](StateId s, std::size_t k) -> bool {
    if (k == 0) return false;
    signed char& m = memo[k][s];
    if (m >= 0) return m != 0;
    bool result = false;
    for (Letter y = 0; y < ny && !result; ++y) {
      bool all = true;
      for (Letter x = 0; x < nx && all; ++x) {
        const StateId t = d.next(s, p.join(x, y));
        all = d.accepting[t] || wins(t, k - 1);
      }
      result = all;
    }
    m = result ? 1 : 0;
    return result;
  };
  return wins(d.initial, depth);
}

struct SymbolicSolution {
  Bdd w;  ///< winning states, over Z
  Bdd t;  ///< winning state/output pairs, over Z and Y
  std::size_t iterations = 0;
  /// One forced round from Z0 into w (plays are nonempty).
  bool realizable = false;
  /// Z0 itself satisfies w.
  bool realizable_direct = false;
  std::vector<Bdd> w_history;  ///< w_0, w_1, ..., fixpoint
  std::vector<Bdd> t_history;  ///< t_0, t_1, ..., fixpoint
};

/// Universal one-step preimage: states from which output Y forces every input
/// into `target`. Result over Z and Y.
inline Bdd controllable_pre(const SymbolicDfa& sd, const Bdd& target) {
  std::vector<Bdd> sub(sd.mgr->var_count());
  for (std::size_t i = 0; i < sd.z_vars.size(); ++i) sub[sd.z_vars[i]] = sd.eta[i];
  return sd.mgr->forall(sd.x_vars, sd.mgr->compose(target, sub));
}

/// Least fixpoint
///   t_0 = w_0 = acc
///   t_{i+1} = t_i | (!w_i & forall X. w_i(eta))
///   w_{i+1} = exists Y. t_{i+1}
/// stopping when w_{i+1} == w_i (handle identity).
inline SymbolicSolution solve_symbolic(const SymbolicDfa& sd, const Deadline& deadline = {}) {
  DdManager& m = *sd.mgr;
  SymbolicSolution sol;
  Bdd w = sd.acc;
  Bdd t = sd.acc;
  sol.w_history.push_back(w);
  sol.t_history.push_back(t);
  const std::size_t cap = sd.num_states() + 1;
  Bdd pre;
  for (;;) {
    deadline.check();
    pre = controllable_pre(sd, w);
    const Bdd t_next = t | ((!w) & pre);
    const Bdd w_next = m.exists(sd.y_vars, t_next);
    ++sol.iterations;
    if (w_next == w) break;
    if (sol.iterations > cap) throw std::logic_error("solve_symbolic: fixpoint did not converge within |S|+1 iterations");
    w = w_next;
    t = t_next;
    sol.w_history.push_back(w);
    sol.t_history.push_back(t);
  }
  sol.w = w;
  sol.t = t;
  const auto z0 = sd.assignment(sd.z0);
  sol.realizable_direct = m.eval(w, z0);
  // pre is the preimage of the fixpoint w.
  sol.realizable = m.eval(m.exists(sd.y_vars, pre), z0);
  return sol;
}

}  // namespace syft
