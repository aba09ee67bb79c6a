#pragma once

// Transducer serialization.
//
// JSON layout (letter bits in partition order, first variable leftmost):
//   {
//     "inputs": ["x", ...], "outputs": ["y", ...],
//     "states": [0, 2, ...], "initial": 0, "accepting": [2],
//     "delta": {"0": {"0": 2, "1": 0}},   state -> input bits -> state
//     "omega": {"0": "1", "2": "0"},       state -> output bits
//     "omega_dontcare": [2]
//   }

#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "syft/partition.hpp"
#include "syft/strategy.hpp"

namespace syft {

inline nlohmann::json to_json(const ExplicitTransducer& tr) {
  using nlohmann::json;
  const std::size_t nx = tr.partition.num_inputs(), ny = tr.partition.num_outputs();
  json j;
  j["inputs"] = tr.partition.inputs();
  j["outputs"] = tr.partition.outputs();
  j["initial"] = tr.initial;
  json states = json::array(), accepting = json::array(), dontcare = json::array();
  json delta = json::object(), omega = json::object();
  for (const auto& [q, e] : tr.states) {
    states.push_back(q);
    if (e.accepting) accepting.push_back(q);
    if (e.omega_dontcare) dontcare.push_back(q);
    omega[std::to_string(q)] = bits_to_string(e.omega, ny);
    if (!e.accepting) {
      json row = json::object();
      for (Letter x = 0; x < e.next.size(); ++x) row[bits_to_string(x, nx)] = e.next[x];
      delta[std::to_string(q)] = std::move(row);
    }
  }
  j["states"] = std::move(states);
  j["accepting"] = std::move(accepting);
  j["delta"] = std::move(delta);
  j["omega"] = std::move(omega);
  j["omega_dontcare"] = std::move(dontcare);
  return j;
}

inline ExplicitTransducer transducer_from_json(const nlohmann::json& j) {
  ExplicitTransducer tr;
  tr.partition = Partition(j.at("inputs").get<std::vector<std::string>>(),
                           j.at("outputs").get<std::vector<std::string>>());
  require_explicit_alphabet_width(tr.partition.num_atoms());
  tr.initial = j.at("initial").get<StateId>();
  const std::size_t nx = tr.partition.num_inputs();
  for (const auto& q : j.at("states")) tr.states[q.get<StateId>()] = {};
  for (const auto& q : j.at("accepting")) tr.states.at(q.get<StateId>()).accepting = true;
  if (j.contains("omega_dontcare"))
    for (const auto& q : j.at("omega_dontcare")) tr.states.at(q.get<StateId>()).omega_dontcare = true;
  for (const auto& [key, bits] : j.at("omega").items())
    tr.states.at(static_cast<StateId>(std::stoul(key))).omega = bits_from_string(bits.get<std::string>());
  for (const auto& [key, row] : j.at("delta").items()) {
    auto& e = tr.states.at(static_cast<StateId>(std::stoul(key)));
    e.next.assign(std::size_t{1} << nx, ~StateId{0});
    for (const auto& [xbits, target] : row.items()) {
      if (xbits.size() != nx) throw std::invalid_argument("delta key '" + xbits + "' has wrong width");
      const StateId t = target.get<StateId>();
      if (!tr.contains(t)) throw std::invalid_argument("delta target " + std::to_string(t) + " is not a state");
      e.next[bits_from_string(xbits)] = t;
    }
  }
  if (!tr.contains(tr.initial)) throw std::invalid_argument("initial state is not listed");
  for (const auto& [q, e] : tr.states) {
    if (e.accepting) continue;
    if (e.next.empty()) throw std::invalid_argument("state " + std::to_string(q) + " has no delta row");
    for (StateId t : e.next)
      if (t == ~StateId{0}) throw std::invalid_argument("state " + std::to_string(q) + " has an incomplete delta row");
  }
  return tr;
}

/// Graphviz rendering; edge labels are `input bits / output bits`.
inline std::string transducer_dot(const ExplicitTransducer& tr) {
  const std::size_t nx = tr.partition.num_inputs(), ny = tr.partition.num_outputs();
  std::ostringstream os;
  os << "digraph transducer {\n  rankdir=LR;\n  init [shape=point];\n";
  for (const auto& [q, e] : tr.states)
    os << "  q" << q << " [shape=" << (e.accepting ? "doublecircle" : "circle") << "];\n";
  os << "  init -> q" << tr.initial << ";\n";
  for (const auto& [q, e] : tr.states)
    for (Letter x = 0; x < e.next.size(); ++x)
      os << "  q" << q << " -> q" << e.next[x] << " [label=\"" << bits_to_string(x, nx) << " / "
         << bits_to_string(e.omega, ny) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace syft
