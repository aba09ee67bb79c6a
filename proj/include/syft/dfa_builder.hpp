#pragma once

// LTLf -> DFA by formula progression.
//
// The NNF formula is abstracted over its closure: literals and X, WX, U, R
// subformulas each get a decision-diagram variable, placed below the letter
// variables. A state is a diagram over closure variables, which makes states
// canonical up to propositional equivalence of their obligations. One
// progression step is a single vector composition that replaces every closure
// variable by its progression as a function of the letter; the letter-variable
// prefix of the result then lists the successors of the state for all letters.

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "syft/bdd.hpp"
#include "syft/common.hpp"
#include "syft/dfa.hpp"
#include "syft/formula.hpp"
#include "syft/partition.hpp"
#include "syft/progression.hpp"
#include "syft/semantics.hpp"

namespace syft {

struct BuildOptions {
  std::size_t max_states = 1'000'000;
  std::size_t node_cap = DdManager::kDefaultNodeCap;
  Deadline deadline;
};

class StateExplosion : public std::length_error {
 public:
  explicit StateExplosion(std::size_t cap)
      : std::length_error("DFA state cap exceeded (" + std::to_string(cap) + " states)") {}
};

namespace detail {

class ProgressionBuilder {
 public:
  ProgressionBuilder(const Formula& nnf, const Partition& p, const BuildOptions& opts)
      : partition_(p), opts_(opts), num_atoms_(p.num_atoms()) {
    collect_closure(nnf);
    std::vector<std::string> names = p.atoms();
    for (std::size_t k = 0; k < closure_.size(); ++k) names.push_back("#" + std::to_string(k));
    mgr_ = std::make_unique<DdManager>(std::move(names), opts.node_cap);
    mgr_->set_deadline(opts.deadline);
    build_progressions();
    root_ = encode(nnf);
  }

  ExplicitDfa run(const Formula& nnf) {
    ExplicitDfa d;
    d.partition = partition_;
    // The entry state is never accepting: plays and models are nonempty. If
    // its obligation is satisfied by the empty suffix and gets re-entered,
    // the re-entry lands on a separate accepting copy.
    d.initial = d.add_state(simplify(nnf), false);
    states_.push_back(root_);
    if (!emp_of(root_)) index_.emplace(root_.id(), d.initial);

    for (std::size_t s = 0; s < states_.size(); ++s) {
      opts_.deadline.check();
      const Bdd succ = mgr_->compose(states_[s], progression_);
      std::unordered_map<std::uint32_t, TransitionDiagram::NodeId> memo;
      d.transition_root[s] = split_letters(succ, d, memo);
    }
    return d;
  }

 private:
  bool is_closure_atom(const Formula& f) const {
    return f.is_literal() || f.is(Op::Next) || f.is(Op::WeakNext) || f.is(Op::Until) || f.is(Op::Release);
  }

  void add_closure(const Formula& f) {
    if (closure_index_.count(f)) return;
    closure_index_.emplace(f, static_cast<std::uint32_t>(closure_.size()));
    closure_.push_back(f);
  }

  // Postorder, so a closure atom's own subformulas precede it.
  void collect_closure(const Formula& f) {
    switch (f.op()) {
      case Op::True:
      case Op::False:
        return;
      case Op::Atom:
        add_closure(f);
        return;
      case Op::Not:
        if (!f.arg().is(Op::Atom)) throw std::invalid_argument("build_dfa: expected NNF");
        add_closure(f);
        return;
      case Op::And:
      case Op::Or:
        collect_closure(f.lhs());
        collect_closure(f.rhs());
        return;
      case Op::Next:
        add_closure(until(top(), top()));
        collect_closure(f.arg());
        add_closure(f);
        return;
      case Op::WeakNext:
        add_closure(release(bottom(), bottom()));
        collect_closure(f.arg());
        add_closure(f);
        return;
      case Op::Until:
      case Op::Release:
        collect_closure(f.lhs());
        collect_closure(f.rhs());
        add_closure(f);
        return;
      default:
        throw std::invalid_argument("build_dfa: expected NNF");
    }
  }

  std::uint32_t var_of(const Formula& f) const {
    return static_cast<std::uint32_t>(num_atoms_ + closure_index_.at(f));
  }

  // Propositional abstraction of an NNF formula over closure variables.
  Bdd encode(const Formula& f) {
    switch (f.op()) {
      case Op::True: return mgr_->one();
      case Op::False: return mgr_->zero();
      case Op::And: return encode(f.lhs()) & encode(f.rhs());
      case Op::Or: return encode(f.lhs()) | encode(f.rhs());
      default: return mgr_->var(var_of(f));
    }
  }

  // Progression of a propositional combination of closure atoms whose own
  // progressions are already known.
  Bdd progress_of(const Formula& f) {
    switch (f.op()) {
      case Op::True: return mgr_->one();
      case Op::False: return mgr_->zero();
      case Op::And: return progress_of(f.lhs()) & progress_of(f.rhs());
      case Op::Or: return progress_of(f.lhs()) | progress_of(f.rhs());
      default: return progression_[var_of(f)];
    }
  }

  void build_progressions() {
    progression_.assign(mgr_->var_count(), Bdd{});
    emp_.assign(mgr_->var_count(), false);
    for (const Formula& f : closure_) {
      const std::uint32_t v = var_of(f);
      Bdd p;
      switch (f.op()) {
        case Op::Atom:
          p = mgr_->var(static_cast<std::uint32_t>(*partition_.index_of(f.name())));
          break;
        case Op::Not:
          p = !mgr_->var(static_cast<std::uint32_t>(*partition_.index_of(f.arg().name())));
          emp_[v] = true;
          break;
        case Op::Next:
          p = encode(f.arg()) & mgr_->var(var_of(until(top(), top())));
          break;
        case Op::WeakNext:
          p = encode(f.arg()) | mgr_->var(var_of(release(bottom(), bottom())));
          emp_[v] = true;
          break;
        case Op::Until:
          p = progress_of(f.rhs()) | (progress_of(f.lhs()) & mgr_->var(v));
          break;
        case Op::Release:
          p = progress_of(f.rhs()) & (progress_of(f.lhs()) | mgr_->var(v));
          emp_[v] = true;
          break;
        default:
          throw std::logic_error("unexpected closure atom");
      }
      progression_[v] = p;
    }
  }

  bool emp_of(const Bdd& state) const {
    return mgr_->eval_with(state, [&](std::uint32_t v) { return static_cast<bool>(emp_[v]); });
  }

  // States are monotone in closure variables (progression never negates an
  // obligation), so the high literals on each path to 1 form a cover.
  Formula residual_of(const Bdd& state) {
    if (state.is_zero()) return bottom();
    if (state.is_one()) return top();
    std::vector<Formula> cubes;
    std::vector<Formula> path;
    std::function<void(const Bdd&)> walk = [&](const Bdd& u) {
      if (u.is_zero()) return;
      if (u.is_one()) {
        if (path.empty()) {
          cubes.push_back(top());
          return;
        }
        Formula c = path.front();
        for (std::size_t k = 1; k < path.size(); ++k) c = land(c, path[k]);
        cubes.push_back(c);
        return;
      }
      walk(u.low());
      path.push_back(closure_[u.var() - num_atoms_]);
      walk(u.high());
      path.pop_back();
    };
    walk(state);
    Formula f = cubes.front();
    for (std::size_t k = 1; k < cubes.size(); ++k) f = lor(f, cubes[k]);
    return simplify(f);
  }

  StateId state_for(const Bdd& state, ExplicitDfa& d) {
    if (auto it = index_.find(state.id()); it != index_.end()) return it->second;
    if (d.num_states() >= opts_.max_states) throw StateExplosion(opts_.max_states);
    const StateId s = d.add_state(residual_of(state), emp_of(state));
    states_.push_back(state);
    index_.emplace(state.id(), s);
    return s;
  }

  TransitionDiagram::NodeId split_letters(const Bdd& u, ExplicitDfa& d,
                                          std::unordered_map<std::uint32_t, TransitionDiagram::NodeId>& memo) {
    if (auto it = memo.find(u.id()); it != memo.end()) return it->second;
    TransitionDiagram::NodeId r;
    if (u.is_constant() || u.var() >= num_atoms_) {
      r = d.diagram.leaf(state_for(u, d));
    } else {
      const auto lo = split_letters(u.low(), d, memo);
      const auto hi = split_letters(u.high(), d, memo);
      r = d.diagram.branch(u.var(), lo, hi);
    }
    memo.emplace(u.id(), r);
    return r;
  }

  Partition partition_;
  BuildOptions opts_;
  std::size_t num_atoms_;
  std::vector<Formula> closure_;
  std::unordered_map<Formula, std::uint32_t, FormulaHash> closure_index_;
  std::unique_ptr<DdManager> mgr_;
  std::vector<Bdd> progression_;
  std::vector<bool> emp_;
  Bdd root_;
  std::vector<Bdd> states_;
  std::unordered_map<std::uint32_t, StateId> index_;
};

}  // namespace detail

/// Compiles `f` into a DFA over 2^P accepting exactly the nonempty models of
/// `f`. State 0 is the initial state; states are numbered in discovery order.
inline ExplicitDfa build_dfa(const Formula& f, const Partition& p, const BuildOptions& opts = {}) {
  if (p.num_atoms() > kMaxLetterWidth)
    throw std::length_error("too many atoms (" + std::to_string(p.num_atoms()) + ", limit " +
                            std::to_string(kMaxLetterWidth) + ")");
  for (const auto& a : atoms_of(f))
    if (!p.index_of(a)) throw std::invalid_argument("atom '" + a + "' is not in the partition");
  const Formula nnf = to_nnf(f);
  detail::ProgressionBuilder builder(nnf, p, opts);
  return builder.run(nnf);
}

}  // namespace syft
