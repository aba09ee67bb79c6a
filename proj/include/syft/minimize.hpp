#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "syft/common.hpp"
#include "syft/dfa.hpp"

namespace syft {

/// Copy of `d` restricted to `order`, with order[k] becoming state k.
inline ExplicitDfa renumber(const ExplicitDfa& d, const std::vector<StateId>& order) {
  std::vector<StateId> map(d.num_states(), ~StateId{0});
  for (std::size_t k = 0; k < order.size(); ++k) map[order[k]] = static_cast<StateId>(k);
  ExplicitDfa out;
  out.partition = d.partition;
  out.initial = map[d.initial];
  std::unordered_map<TransitionDiagram::NodeId, TransitionDiagram::NodeId> memo;
  for (StateId s : order) {
    const StateId t = out.add_state(d.residual[s], d.accepting[s]);
    out.transition_root[t] = d.diagram.relabel(
        d.transition_root[s], [&](StateId x) { return map[x]; }, out.diagram, memo);
  }
  return out;
}

/// Minimal DFA for the same language: unreachable states dropped, then Moore
/// refinement where a state's signature is its class together with its
/// transition diagram relabelled by classes. Output is numbered breadth-first
/// from the initial state; each class keeps the residual of its first member.
inline ExplicitDfa minimize(const ExplicitDfa& input, const Deadline& deadline = {}) {
  const ExplicitDfa d = renumber(input, bfs_order(input));
  const std::size_t n = d.num_states();

  std::vector<StateId> cls(n);
  std::size_t num_classes = 0;
  {
    std::map<bool, StateId> first;
    for (StateId s = 0; s < n; ++s) {
      auto [it, fresh] = first.emplace(d.accepting[s], static_cast<StateId>(num_classes));
      if (fresh) ++num_classes;
      cls[s] = it->second;
    }
  }

  std::vector<TransitionDiagram::NodeId> sig_root(n);
  for (;;) {
    deadline.check();
    TransitionDiagram scratch;
    std::unordered_map<TransitionDiagram::NodeId, TransitionDiagram::NodeId> memo;
    std::map<std::pair<StateId, TransitionDiagram::NodeId>, StateId> ids;
    std::vector<StateId> refined(n);
    for (StateId s = 0; s < n; ++s) {
      sig_root[s] = d.diagram.relabel(
          d.transition_root[s], [&](StateId x) { return cls[x]; }, scratch, memo);
      auto [it, fresh] = ids.emplace(std::make_pair(cls[s], sig_root[s]), static_cast<StateId>(ids.size()));
      refined[s] = it->second;
    }
    const bool stable = ids.size() == num_classes;
    cls = std::move(refined);
    num_classes = ids.size();
    if (stable) break;
  }

  ExplicitDfa q;
  q.partition = d.partition;
  q.initial = cls[d.initial];
  std::vector<bool> placed(num_classes, false);
  for (StateId s = 0; s < n; ++s) {
    if (placed[cls[s]]) continue;
    placed[cls[s]] = true;
    while (q.num_states() <= cls[s]) q.add_state(Formula{}, false);
    q.residual[cls[s]] = d.residual[s];
    q.accepting[cls[s]] = d.accepting[s];
    std::unordered_map<TransitionDiagram::NodeId, TransitionDiagram::NodeId> memo;
    q.transition_root[cls[s]] = d.diagram.relabel(
        d.transition_root[s], [&](StateId x) { return cls[x]; }, q.diagram, memo);
  }
  return renumber(q, bfs_order(q));
}

}  // namespace syft
