#pragma once

// Embedding of LTLf synthesis into infinite-trace LTL synthesis. A fresh
// output Tail marks the intended finite trace: it holds on a nonempty prefix
// and is false forever after. The image of f is
//
//   Tail & (Tail U G !Tail) & tr(f)
//
// with tr applied to the NNF of f:
//
//   tr(a) = a, tr(!a) = !a, tr commutes with & and |
//   tr(X p)   = X (Tail & tr(p))
//   tr(WX p)  = X (!Tail | tr(p))
//   tr(p U q) = tr(p) U (Tail & tr(q))
//   tr(p R q) = tr(p) R (!Tail | tr(q))

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "syft/formula.hpp"
#include "syft/partition.hpp"
#include "syft/semantics.hpp"

namespace syft {

inline constexpr const char* kTailName = "Tail";

struct LtlProblem {
  Formula formula;
  Partition partition;  ///< original inputs; outputs plus Tail
};

namespace detail {

inline Formula tail_translate(const Formula& f, const Formula& tail) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not:
      return f;  // literal, input is NNF
    case Op::And: return land(tail_translate(f.lhs(), tail), tail_translate(f.rhs(), tail));
    case Op::Or: return lor(tail_translate(f.lhs(), tail), tail_translate(f.rhs(), tail));
    case Op::Next: return next(land(tail, tail_translate(f.arg(), tail)));
    case Op::WeakNext: return next(lor(lnot(tail), tail_translate(f.arg(), tail)));
    case Op::Until: return until(tail_translate(f.lhs(), tail), land(tail, tail_translate(f.rhs(), tail)));
    case Op::Release: return release(tail_translate(f.lhs(), tail), lor(lnot(tail), tail_translate(f.rhs(), tail)));
    default: break;
  }
  throw std::logic_error("tail_translate: expected NNF");
}

}  // namespace detail

/// Tail-relativized translation of the NNF of `f`, without the Tail-shape
/// conjuncts.
inline Formula tail_translate(const Formula& f) {
  if (atoms_of(f).count(kTailName)) throw std::invalid_argument("formula already uses the name Tail");
  return detail::tail_translate(to_nnf(f), atom(kTailName));
}

inline LtlProblem reduce(const Formula& f, const Partition& p) {
  if (atoms_of(f).count(kTailName) || p.index_of(kTailName))
    throw std::invalid_argument("the name Tail is reserved by the reduction");
  const Formula tail = atom(kTailName);
  const Formula shape = land(tail, until(tail, always(lnot(tail))));
  const Formula body = detail::tail_translate(to_nnf(f), tail);
  std::vector<std::string> outs = p.outputs();
  outs.push_back(kTailName);
  return {body.is(Op::True) ? shape : land(shape, body), Partition(p.inputs(), std::move(outs))};
}

/// Ultimately periodic infinite trace prefix . loop^omega.
struct Lasso {
  Trace prefix;
  Trace loop;

  std::size_t positions() const { return prefix.size() + loop.size(); }
  std::size_t successor(std::size_t i) const { return i + 1 < positions() ? i + 1 : prefix.size(); }
  const std::set<std::string>& at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : loop[i - prefix.size()];
  }
};

namespace detail {

// Truth value of every subformula at every distinct lasso position. Until is a
// least fixpoint and Release a greatest fixpoint of their one-step unfolding.
inline const std::vector<bool>& lasso_table(const Formula& f, const Lasso& l,
                                            std::unordered_map<const void*, std::vector<bool>>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  const std::size_t n = l.positions();
  std::vector<bool> v(n, false);
  auto sub = [&](const Formula& g) -> const std::vector<bool>& { return lasso_table(g, l, memo); };
  auto fix = [&](const std::vector<bool>& lhs, const std::vector<bool>& rhs, bool least) {
    std::vector<bool> cur(n, !least);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = n; i-- > 0;) {
        const bool nv = least ? (rhs[i] || (lhs[i] && cur[l.successor(i)]))
                              : (rhs[i] && (lhs[i] || cur[l.successor(i)]));
        if (nv != cur[i]) {
          cur[i] = nv;
          changed = true;
        }
      }
    }
    return cur;
  };
  switch (f.op()) {
    case Op::True: v.assign(n, true); break;
    case Op::False: break;
    case Op::Atom:
      for (std::size_t i = 0; i < n; ++i) v[i] = l.at(i).count(f.name()) != 0;
      break;
    case Op::Not: {
      const auto& a = sub(f.arg());
      for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
      break;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      const auto a = sub(f.lhs());
      const auto& b = sub(f.rhs());
      for (std::size_t i = 0; i < n; ++i)
        v[i] = f.is(Op::And) ? (a[i] && b[i]) : f.is(Op::Or) ? (a[i] || b[i]) : (!a[i] || b[i]);
      break;
    }
    case Op::Next:
    case Op::WeakNext: {
      const auto& a = sub(f.arg());
      for (std::size_t i = 0; i < n; ++i) v[i] = a[l.successor(i)];
      break;
    }
    case Op::Until: {
      const auto a = sub(f.lhs());
      v = fix(a, sub(f.rhs()), true);
      break;
    }
    case Op::Release: {
      const auto a = sub(f.lhs());
      v = fix(a, sub(f.rhs()), false);
      break;
    }
    case Op::Eventually: v = fix(std::vector<bool>(n, true), sub(f.arg()), true); break;
    case Op::Always: v = fix(std::vector<bool>(n, false), sub(f.arg()), false); break;
  }
  return memo.emplace(f.id(), std::move(v)).first->second;
}

}  // namespace detail

/// Infinite-trace LTL satisfaction at position i of a lasso. Weak next is
/// read as next, since every position has a successor.
inline bool eval_lasso(const Formula& f, const Lasso& l, std::size_t i = 0) {
  if (l.loop.empty()) throw std::invalid_argument("eval_lasso: empty loop");
  if (i >= l.positions()) throw std::out_of_range("eval_lasso: position out of range");
  std::unordered_map<const void*, std::vector<bool>> memo;
  return detail::lasso_table(f, l, memo)[i];
}

/// Marks the finite trace with Tail and appends a Tail-free padding lasso.
inline Lasso tail_extension(const Trace& finite, const Lasso& padding) {
  Lasso l;
  for (auto step : finite) {
    step.insert(kTailName);
    l.prefix.push_back(std::move(step));
  }
  auto strip = [](std::set<std::string> s) {
    s.erase(kTailName);
    return s;
  };
  for (const auto& s : padding.prefix) l.prefix.push_back(strip(s));
  for (const auto& s : padding.loop) l.loop.push_back(strip(s));
  return l;
}

struct ReductionReport {
  std::size_t checked = 0;
  bool passed = true;
  Trace counterexample;
  Lasso padding;
};

/// Random finite traces (length 1..5) with random paddings: rho |= f must
/// match tail_extension(rho, padding) |= reduce(f).formula.
inline ReductionReport validate_reduction(const Formula& f, std::size_t trials, std::uint64_t seed = 1) {
  if (trials == 0) throw std::invalid_argument("validate_reduction: trials must be positive");
  const std::set<std::string> atom_set = atoms_of(f);
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const Formula image = reduce(f, Partition({}, atoms)).formula;
  std::mt19937_64 rng(seed);
  auto random_step = [&] {
    std::set<std::string> s;
    for (const auto& a : atoms)
      if (rng() & 1U) s.insert(a);
    return s;
  };
  ReductionReport rep;
  for (std::size_t k = 0; k < trials; ++k) {
    Trace rho(1 + rng() % 5);
    for (auto& s : rho) s = random_step();
    Lasso pad;
    pad.prefix.resize(rng() % 3);
    for (auto& s : pad.prefix) s = random_step();
    pad.loop.resize(1 + rng() % 2);
    for (auto& s : pad.loop) s = random_step();
    ++rep.checked;
    if (eval_trace(f, rho, 0) != eval_lasso(image, tail_extension(rho, pad), 0)) {
      rep.passed = false;
      rep.counterexample = rho;
      rep.padding = pad;
      return rep;
    }
  }
  return rep;
}

}  // namespace syft
