#pragma once

// Formula progression: the obligation left on the rest of a trace after one
// letter has been consumed, and the end-of-trace test for such obligations.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "syft/formula.hpp"
#include "syft/partition.hpp"
#include "syft/semantics.hpp"

namespace syft {

namespace detail {

inline void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
  if (f.is(op)) {
    flatten(f.lhs(), op, out);
    flatten(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}

inline Formula build_chain(Op op, const std::vector<Formula>& items) {
  Formula f = items.front();
  for (std::size_t k = 1; k < items.size(); ++k) f = Formula::binary(op, f, items[k]);
  return f;
}

inline bool complementary(const Formula& a, const Formula& b) {
  return (a.is(Op::Not) && a.arg() == b) || (b.is(Op::Not) && b.arg() == a);
}

}  // namespace detail

/// Boolean simplification of an NNF formula: constant folding, flattening,
/// sorting, idempotence, complementary literals and one level of absorption.
/// Temporal operands are left untouched.
inline Formula simplify(const Formula& f) {
  if (!f.is(Op::And) && !f.is(Op::Or)) return f;
  const Op op = f.op();
  const Op dual = op == Op::And ? Op::Or : Op::And;
  const bool is_and = op == Op::And;

  std::vector<Formula> raw, items;
  detail::flatten(f, op, raw);
  for (const Formula& r : raw) {
    Formula s = simplify(r);
    if (s.is(Op::True) || s.is(Op::False)) {
      if (s.is(Op::True) == is_and) continue;  // neutral element
      return s;                                // absorbing element
    }
    if (s.is(op))
      detail::flatten(s, op, items);
    else
      items.push_back(s);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (detail::complementary(items[i], items[j])) return Formula::constant(!is_and);

  // Absorption: p & (p | q) = p, p | (p & q) = p.
  std::vector<Formula> kept;
  for (const Formula& item : items) {
    bool absorbed = false;
    if (item.is(dual)) {
      std::vector<Formula> parts;
      detail::flatten(item, dual, parts);
      for (const Formula& other : items) {
        if (other == item) continue;
        if (std::find(parts.begin(), parts.end(), other) != parts.end()) {
          absorbed = true;
          break;
        }
      }
    }
    if (!absorbed) kept.push_back(item);
  }
  if (kept.empty()) return Formula::constant(is_and);
  return detail::build_chain(op, kept);
}

/// Obligation on the suffix after consuming `letter` (bits over `atom_order`).
/// Requires NNF.
inline Formula progress(const Formula& f, Letter letter, const std::vector<std::string>& atom_order) {
  auto holds = [&](const std::string& name) {
    for (std::size_t k = 0; k < atom_order.size(); ++k)
      if (atom_order[k] == name) return (letter >> k & 1U) != 0;
    return false;
  };
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return Formula::constant(holds(f.name()));
    case Op::Not:
      if (!f.arg().is(Op::Atom)) break;
      return Formula::constant(!holds(f.arg().name()));
    case Op::And:
      return simplify(land(progress(f.lhs(), letter, atom_order), progress(f.rhs(), letter, atom_order)));
    case Op::Or:
      return simplify(lor(progress(f.lhs(), letter, atom_order), progress(f.rhs(), letter, atom_order)));
    case Op::Next:
      // "true U true" is the obligation that at least one more step exists.
      return simplify(land(f.arg(), until(top(), top())));
    case Op::WeakNext:
      // "false R false" holds exactly when no step remains.
      return simplify(lor(f.arg(), release(bottom(), bottom())));
    case Op::Until:
      return simplify(lor(progress(f.rhs(), letter, atom_order), land(progress(f.lhs(), letter, atom_order), f)));
    case Op::Release:
      return simplify(land(progress(f.rhs(), letter, atom_order), lor(progress(f.lhs(), letter, atom_order), f)));
    default:
      break;
  }
  throw std::invalid_argument("progress: formula is not in negation normal form");
}

/// Whether an NNF obligation is discharged when no letters remain.
inline bool emp(const Formula& f) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return false;
    case Op::Not:
      if (!f.arg().is(Op::Atom)) break;
      return true;
    case Op::And: return emp(f.lhs()) && emp(f.rhs());
    case Op::Or: return emp(f.lhs()) || emp(f.rhs());
    case Op::Next: return false;
    case Op::WeakNext: return true;
    case Op::Until: return false;
    case Op::Release: return true;
    default: break;
  }
  throw std::invalid_argument("emp: formula is not in negation normal form");
}

}  // namespace syft
