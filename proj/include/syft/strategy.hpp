#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "syft/bdd.hpp"
#include "syft/common.hpp"
#include "syft/dfa.hpp"
#include "syft/formula.hpp"
#include "syft/semantics.hpp"
#include "syft/solver.hpp"
#include "syft/symbolic.hpp"

namespace syft {

/// tau : 2^Z -> 2^Y, one diagram over Z per output variable.
struct OutputFunction {
  std::vector<Bdd> tau;

  Letter eval(const SymbolicDfa& sd, StateCode z) const {
    const auto a = sd.assignment(z);
    Letter y = 0;
    for (std::size_t j = 0; j < tau.size(); ++j)
      if (sd.mgr->eval(tau[j], a)) y |= Letter{1} << j;
    return y;
  }
};

/// Boolean synthesis on the fixpoint t with Z as inputs and Y as outputs.
inline OutputFunction synthesize_tau(const SymbolicSolution& sol, const SymbolicDfa& sd) {
  DdManager& m = *sd.mgr;
  const auto gamma = m.solve_outputs(sol.t, sd.y_vars);
  return OutputFunction{m.resolve_outputs(gamma, sd.y_vars)};
}

struct SymbolicTransducer {
  const SymbolicDfa* automaton = nullptr;
  OutputFunction output;
  std::vector<Bdd> zeta;  ///< zeta[i](Z, X) = eta[i](X, tau(Z), Z)

  Letter output_at(StateCode z) const { return output.eval(*automaton, z); }

  StateCode step(StateCode z, Letter x) const {
    const auto a = automaton->assignment(z, x);
    StateCode next = 0;
    for (std::size_t i = 0; i < zeta.size(); ++i)
      if (automaton->mgr->eval(zeta[i], a)) next |= StateCode{1} << i;
    return next;
  }
};

inline SymbolicTransducer build_symbolic_transducer(const SymbolicDfa& sd, const OutputFunction& tau) {
  SymbolicTransducer tr{&sd, tau, {}};
  std::vector<Bdd> sub(sd.mgr->var_count());
  for (std::size_t j = 0; j < sd.y_vars.size(); ++j) sub[sd.y_vars[j]] = tau.tau[j];
  tr.zeta = sd.mgr->compose(sd.eta, sub);
  return tr;
}

/// Finite transducer over DFA states. Accepting states end the game and have
/// no outgoing transitions; their output is a don't-care.
struct ExplicitTransducer {
  struct Entry {
    bool accepting = false;
    Letter omega = 0;
    bool omega_dontcare = false;
    std::vector<StateId> next;  ///< indexed by input letter; empty when accepting
  };

  Partition partition;
  StateId initial = 0;
  std::map<StateId, Entry> states;

  bool contains(StateId q) const { return states.count(q) != 0; }
  const Entry& at(StateId q) const { return states.at(q); }
};

inline ExplicitTransducer build_explicit_transducer(const ExplicitDfa& d, const ExplicitSolution& sol) {
  if (!sol.realizable) throw std::invalid_argument("build_explicit_transducer: instance is unrealizable");
  require_explicit_alphabet(d);
  ExplicitTransducer tr;
  tr.partition = d.partition;
  tr.initial = d.initial;
  const Letter nx = Letter{1} << d.partition.num_inputs();
  for (StateId q = 0; q < d.num_states(); ++q) {
    if (!sol.winning[q]) continue;
    ExplicitTransducer::Entry e;
    e.accepting = d.accepting[q];
    if (e.accepting) {
      e.omega_dontcare = true;
    } else {
      e.omega = *sol.winning_output[q];
      for (Letter x = 0; x < nx; ++x) e.next.push_back(d.next(q, d.partition.join(x, e.omega)));
    }
    tr.states.emplace(q, std::move(e));
  }
  return tr;
}

/// Explicit view of the part of a symbolic transducer reachable from Z0,
/// with states named by the DFA states their codes denote.
inline ExplicitTransducer to_explicit(const SymbolicTransducer& st) {
  const SymbolicDfa& sd = *st.automaton;
  require_explicit_alphabet_width(sd.partition.num_atoms());
  ExplicitTransducer tr;
  tr.partition = sd.partition;
  auto name = [&](StateCode z) {
    auto s = sd.decode(z);
    if (!s) throw std::logic_error("symbolic transducer reached an unused state code");
    return *s;
  };
  tr.initial = name(sd.z0);
  const Letter nx = Letter{1} << sd.partition.num_inputs();
  std::vector<StateCode> work{sd.z0};
  while (!work.empty()) {
    const StateCode z = work.back();
    work.pop_back();
    const StateId q = name(z);
    if (tr.contains(q)) continue;
    ExplicitTransducer::Entry e;
    e.accepting = sd.accepting(z);
    e.omega = st.output_at(z);
    e.omega_dontcare = e.accepting;
    if (!e.accepting) {
      for (Letter x = 0; x < nx; ++x) {
        const StateCode nz = st.step(z, x);
        e.next.push_back(name(nz));
        work.push_back(nz);
      }
    }
    tr.states.emplace(q, std::move(e));
  }
  return tr;
}

struct Run {
  struct Step {
    Letter input = 0;
    Letter output = 0;
    StateId state = 0;  ///< state after the step
  };
  std::vector<Step> steps;
  std::optional<std::size_t> accepted_at;
};

/// Replays inputs until the first accepting post-state or until they run out.
inline Run run(const ExplicitTransducer& tr, const std::vector<Letter>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("run: empty input sequence");
  Run r;
  StateId q = tr.initial;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& e = tr.at(q);
    if (e.accepting) throw std::logic_error("run: transducer continued past an accepting state");
    const StateId nq = e.next.at(inputs[i]);
    r.steps.push_back({inputs[i], e.omega, nq});
    q = nq;
    if (tr.at(q).accepting) {
      r.accepted_at = i;
      break;
    }
  }
  return r;
}

inline Run run(const SymbolicTransducer& tr, const std::vector<Letter>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("run: empty input sequence");
  const SymbolicDfa& sd = *tr.automaton;
  Run r;
  StateCode z = sd.z0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Letter y = tr.output_at(z);
    z = tr.step(z, inputs[i]);
    const auto s = sd.decode(z);
    r.steps.push_back({inputs[i], y, s ? *s : ~StateId{0}});
    if (sd.accepting(z)) {
      r.accepted_at = i;
      break;
    }
  }
  return r;
}

/// Output chosen by a strategy at a DFA state, if it defines one.
using StrategyOutput = std::function<std::optional<Letter>(StateId)>;

/// Checks that following `output` from the initial state forces acceptance
/// within `bound` rounds against every input sequence. Transitions are taken
/// from the DFA, not from the strategy.
inline bool verify_strategy(const ExplicitDfa& d, const StrategyOutput& output, std::size_t bound) {
  require_explicit_alphabet(d);
  const Partition& p = d.partition;
  const Letter nx = Letter{1} << p.num_inputs();
  std::vector<std::vector<signed char>> memo(bound + 1, std::vector<signed char>(d.num_states(), -1));
  std::function<bool(StateId, std::size_t)> good = [&](StateId q, std::size_t k) -> bool {
    if (k == 0) return false;
    signed char& m = memo[k][q];
    if (m >= 0) return m != 0;
    bool ok = false;
    if (auto y = output(q)) {
      ok = true;
      for (Letter x = 0; x < nx && ok; ++x) {
        const StateId t = d.next(q, p.join(x, *y));
        ok = d.accepting[t] || good(t, k - 1);
      }
    }
    m = ok ? 1 : 0;
    return ok;
  };
  return good(d.initial, bound);
}

inline bool verify_strategy(const ExplicitDfa& d, const ExplicitTransducer& tr) {
  require_explicit_alphabet(d);
  if (tr.initial != d.initial) return false;
  // The transducer's own transitions must follow the DFA under its outputs.
  for (const auto& [q, e] : tr.states) {
    if (q >= d.num_states() || e.accepting != d.accepting[q]) return false;
    for (Letter x = 0; x < e.next.size(); ++x)
      if (e.next[x] != d.next(q, d.partition.join(x, e.omega))) return false;
  }
  return verify_strategy(
      d,
      [&](StateId q) -> std::optional<Letter> {
        auto it = tr.states.find(q);
        if (it == tr.states.end() || it->second.accepting) return std::nullopt;
        return it->second.omega;
      },
      d.num_states());
}

/// `sd` must be the encoding of `d`.
inline bool verify_strategy(const ExplicitDfa& d, const SymbolicTransducer& tr) {
  const SymbolicDfa& sd = *tr.automaton;
  if (sd.num_states() != d.num_states() || sd.z0 != sd.code(d.initial)) return false;
  return verify_strategy(
      d, [&](StateId q) -> std::optional<Letter> { return tr.output_at(sd.code(q)); }, d.num_states());
}

/// Every play of the strategy against all input sequences, each cut at its
/// first accepting state. Plays still open after `bound` rounds are returned
/// unaccepted.
inline std::vector<Run> enumerate_plays(const ExplicitDfa& d, const StrategyOutput& output, std::size_t bound) {
  require_explicit_alphabet(d);
  const Partition& p = d.partition;
  const Letter nx = Letter{1} << p.num_inputs();
  std::vector<Run> plays;
  Run current;
  std::function<void(StateId)> rec = [&](StateId q) {
    const auto y = output(q);
    if (!y || current.steps.size() >= bound) {
      plays.push_back(current);
      return;
    }
    for (Letter x = 0; x < nx; ++x) {
      const StateId t = d.next(q, p.join(x, *y));
      current.steps.push_back({x, *y, t});
      if (d.accepting[t]) {
        current.accepted_at = current.steps.size() - 1;
        plays.push_back(current);
        current.accepted_at.reset();
      } else {
        rec(t);
      }
      current.steps.pop_back();
    }
  };
  rec(d.initial);
  return plays;
}

/// Letters (inputs and outputs joined) of the run up to its acceptance step.
inline std::vector<Letter> run_letters(const Partition& p, const Run& r) {
  std::vector<Letter> out;
  const std::size_t end = r.accepted_at ? *r.accepted_at + 1 : r.steps.size();
  for (std::size_t i = 0; i < end; ++i) out.push_back(p.join(r.steps[i].input, r.steps[i].output));
  return out;
}

/// Whether the formula holds on the trace of an accepted run.
inline bool check_trace(const Formula& f, const Partition& p, const Run& r) {
  if (!r.accepted_at) throw std::invalid_argument("check_trace: run was not accepted");
  return eval_trace(f, trace_from_letters(run_letters(p, r), p.atoms()), 0);
}

}  // namespace syft
