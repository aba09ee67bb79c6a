#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "syft/common.hpp"
#include "syft/formula.hpp"
#include "syft/partition.hpp"

namespace syft {

/// Finite trace; step i is the set of atoms true at instant i.
using Trace = std::vector<std::set<std::string>>;

inline Trace trace_from_letters(const std::vector<Letter>& letters, const std::vector<std::string>& atom_order) {
  Trace t;
  t.reserve(letters.size());
  for (Letter l : letters) {
    std::set<std::string> step;
    for (std::size_t k = 0; k < atom_order.size(); ++k)
      if (l >> k & 1U) step.insert(atom_order[k]);
    t.push_back(std::move(step));
  }
  return t;
}

namespace detail {

inline Formula nnf(const Formula& f, bool negate) {
  switch (f.op()) {
    case Op::True: return Formula::constant(!negate);
    case Op::False: return Formula::constant(negate);
    case Op::Atom: return negate ? lnot(f) : f;
    case Op::Not: return nnf(f.arg(), !negate);
    case Op::And:
      return negate ? lor(nnf(f.lhs(), true), nnf(f.rhs(), true)) : land(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return negate ? land(nnf(f.lhs(), true), nnf(f.rhs(), true)) : lor(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Implies:
      return negate ? land(nnf(f.lhs(), false), nnf(f.rhs(), true)) : lor(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Op::Next: return negate ? weak_next(nnf(f.arg(), true)) : next(nnf(f.arg(), false));
    case Op::WeakNext: return negate ? next(nnf(f.arg(), true)) : weak_next(nnf(f.arg(), false));
    case Op::Until:
      return negate ? release(nnf(f.lhs(), true), nnf(f.rhs(), true)) : until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return negate ? until(nnf(f.lhs(), true), nnf(f.rhs(), true)) : release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Eventually:
      // F p = true U p, !F p = false R !p
      return negate ? release(bottom(), nnf(f.arg(), true)) : until(top(), nnf(f.arg(), false));
    case Op::Always:
      return negate ? until(top(), nnf(f.arg(), true)) : release(bottom(), nnf(f.arg(), false));
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// Negation normal form over {true, false, literals, &, |, X, WX, U, R}.
inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

inline bool is_nnf(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return f.arg().is(Op::Atom);
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
      return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case Op::Next:
    case Op::WeakNext:
      return is_nnf(f.arg());
    default:
      return false;
  }
}

/// rho, i |= f, following the finite-trace satisfaction clauses directly.
/// This is the reference semantics every other module is tested against.
inline bool eval_trace(const Formula& f, const Trace& t, std::size_t i) {
  if (t.empty()) throw std::out_of_range("eval_trace: empty trace");
  if (i >= t.size()) throw std::out_of_range("eval_trace: position out of range");
  const std::size_t n = t.size();
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return t[i].count(f.name()) != 0;
    case Op::Not: return !eval_trace(f.arg(), t, i);
    case Op::And: return eval_trace(f.lhs(), t, i) && eval_trace(f.rhs(), t, i);
    case Op::Or: return eval_trace(f.lhs(), t, i) || eval_trace(f.rhs(), t, i);
    case Op::Implies: return !eval_trace(f.lhs(), t, i) || eval_trace(f.rhs(), t, i);
    case Op::Next: return i + 1 < n && eval_trace(f.arg(), t, i + 1);
    case Op::WeakNext: return i + 1 >= n || eval_trace(f.arg(), t, i + 1);
    case Op::Until:
      for (std::size_t j = i; j < n; ++j) {
        if (eval_trace(f.rhs(), t, j)) return true;
        if (!eval_trace(f.lhs(), t, j)) return false;
      }
      return false;
    case Op::Release:
      // p R q == !(!p U !q)
      for (std::size_t j = i; j < n; ++j) {
        if (!eval_trace(f.rhs(), t, j)) return false;
        if (eval_trace(f.lhs(), t, j)) return true;
      }
      return true;
    case Op::Eventually:
      for (std::size_t j = i; j < n; ++j)
        if (eval_trace(f.arg(), t, j)) return true;
      return false;
    case Op::Always:
      for (std::size_t j = i; j < n; ++j)
        if (!eval_trace(f.arg(), t, j)) return false;
      return true;
  }
  throw std::logic_error("unreachable");
}

/// Formula compiled to a postorder program evaluated over traces of letters
/// with all positions at once (one bit per position). Limited to traces of at
/// most 64 steps.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<std::string>& atom_order) {
    std::unordered_map<const void*, std::uint32_t> memo;
    root_ = emit(f, atom_order, memo);
  }

  /// Bit i of the result is rho, i |= f.
  std::uint64_t eval_all(const std::vector<Letter>& trace) const {
    const std::size_t n = trace.size();
    if (n == 0 || n > 64) throw std::out_of_range("CompiledFormula: trace length must be in [1, 64]");
    const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    const std::uint64_t last = 1ULL << (n - 1);
    std::vector<std::uint64_t> v(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
      const Instr& in = code_[k];
      const std::uint64_t a = in.a < k ? v[in.a] : 0, b = in.b < k ? v[in.b] : 0;
      std::uint64_t r = 0;
      switch (in.op) {
        case Op::True: r = full; break;
        case Op::False: r = 0; break;
        case Op::Atom:
          for (std::size_t i = 0; i < n; ++i)
            if (in.atom >= 0 && (trace[i] >> in.atom & 1U)) r |= 1ULL << i;
          break;
        case Op::Not: r = ~a & full; break;
        case Op::And: r = a & b; break;
        case Op::Or: r = a | b; break;
        case Op::Implies: r = (~a | b) & full; break;
        case Op::Next: r = a >> 1; break;
        case Op::WeakNext: r = (a >> 1) | last; break;
        case Op::Eventually:
        case Op::Until: {
          const std::uint64_t lhs = in.op == Op::Eventually ? full : a;
          const std::uint64_t rhs = in.op == Op::Eventually ? a : b;
          bool acc = false;
          for (std::size_t i = n; i-- > 0;) {
            acc = (rhs >> i & 1U) || ((lhs >> i & 1U) && acc);
            if (acc) r |= 1ULL << i;
          }
          break;
        }
        case Op::Always:
        case Op::Release: {
          const std::uint64_t lhs = in.op == Op::Always ? 0 : a;
          const std::uint64_t rhs = in.op == Op::Always ? a : b;
          bool acc = true;
          for (std::size_t i = n; i-- > 0;) {
            acc = (rhs >> i & 1U) && ((lhs >> i & 1U) || acc);
            if (acc) r |= 1ULL << i;
          }
          break;
        }
      }
      v[k] = r;
    }
    return v[root_];
  }

  bool eval(const std::vector<Letter>& trace, std::size_t i = 0) const { return eval_all(trace) >> i & 1U; }

 private:
  struct Instr {
    Op op;
    int atom = -1;
    std::uint32_t a = 0, b = 0;
  };

  std::uint32_t emit(const Formula& f, const std::vector<std::string>& order,
                     std::unordered_map<const void*, std::uint32_t>& memo) {
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    Instr in{f.op()};
    if (f.is(Op::Atom)) {
      for (std::size_t k = 0; k < order.size(); ++k)
        if (order[k] == f.name()) in.atom = static_cast<int>(k);
    }
    if (arity(f.op()) >= 1) in.a = emit(f.lhs(), order, memo);
    if (arity(f.op()) == 2) in.b = emit(f.rhs(), order, memo);
    code_.push_back(in);
    const auto idx = static_cast<std::uint32_t>(code_.size() - 1);
    memo.emplace(f.id(), idx);
    return idx;
  }

  std::vector<Instr> code_;
  std::uint32_t root_ = 0;
};

}  // namespace syft
