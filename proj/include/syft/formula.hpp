#pragma once

// LTLf abstract syntax. Formulas are immutable trees shared by pointer;
// equality and ordering are structural.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace syft {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  WeakNext,
  Until,
  Release,
  Eventually,
  Always,
  Implies,
};

inline constexpr int arity(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::WeakNext:
    case Op::Eventually:
    case Op::Always:
      return 1;
    default:
      return 2;
  }
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  for (char c : s.substr(1))
    if (!tail(c)) return false;
  return true;
}

class Formula {
  struct Node;

 public:
  /// Default-constructed formula is `true`.
  Formula();

  static Formula constant(bool value) { return make(value ? Op::True : Op::False, {}, Formula(NoInit{}), Formula(NoInit{})); }

  static Formula atom(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
    return make(Op::Atom, std::move(name), Formula(NoInit{}), Formula(NoInit{}));
  }

  static Formula unary(Op op, Formula a) {
    if (arity(op) != 1) throw std::invalid_argument("operator is not unary");
    return make(op, {}, std::move(a), Formula(NoInit{}));
  }

  static Formula binary(Op op, Formula a, Formula b) {
    if (arity(op) != 2) throw std::invalid_argument("operator is not binary");
    return make(op, {}, std::move(a), std::move(b));
  }

  Op op() const;
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Single operand of a unary node.
  const Formula& arg() const;
  std::size_t hash() const;
  /// Number of AST nodes.
  std::size_t size() const;

  bool is(Op op) const;
  bool is_literal() const {
    return is(Op::Atom) || (is(Op::Not) && arg().is(Op::Atom));
  }

  /// Pointer identity of the shared node. Usable as a memo key while the
  /// formula is alive.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  /// Total structural order: operator, then name, then operands.
  static int compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    if (a.is(Op::Atom)) return a.name().compare(b.name());
    for (int k = 0; k < arity(a.op()); ++k) {
      int c = k == 0 ? compare(a.lhs(), b.lhs()) : compare(a.rhs(), b.rhs());
      if (c != 0) return c;
    }
    return 0;
  }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  struct NoInit {};
  explicit Formula(NoInit) {}

  static Formula make(Op op, std::string name, Formula a, Formula b);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  std::array<Formula, 2> kids;
  std::size_t hash;
  std::size_t size;
};

inline Formula::Formula() : Formula(make(Op::True, {}, Formula(NoInit{}), Formula(NoInit{}))) {}
inline Op Formula::op() const { return node_->op; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::lhs() const { return node_->kids[0]; }
inline const Formula& Formula::rhs() const { return node_->kids[1]; }
inline const Formula& Formula::arg() const { return node_->kids[0]; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::size_t Formula::size() const { return node_->size; }
inline bool Formula::is(Op op) const { return node_->op == op; }

inline Formula Formula::make(Op op, std::string name, Formula a, Formula b) {
  auto n = std::make_shared<Node>(Node{op, std::move(name), {Formula(NoInit{}), Formula(NoInit{})}, 0, 1});
  std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9e3779b97f4a7c15ULL;
  if (op == Op::Atom) h ^= std::hash<std::string>{}(n->name);
  const int k = arity(op);
  if (k >= 1) n->kids[0] = std::move(a);
  if (k >= 2) n->kids[1] = std::move(b);
  for (int i = 0; i < k; ++i) {
    h = (h ^ (n->kids[i].hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))) * 1099511628211ULL;
    n->size += n->kids[i].size();
  }
  n->hash = h;
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Builders

inline Formula top() { return Formula::constant(true); }
inline Formula bottom() { return Formula::constant(false); }
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula lnot(Formula a) { return Formula::unary(Op::Not, std::move(a)); }
inline Formula land(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
inline Formula lor(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
inline Formula next(Formula a) { return Formula::unary(Op::Next, std::move(a)); }
inline Formula weak_next(Formula a) { return Formula::unary(Op::WeakNext, std::move(a)); }
inline Formula until(Formula a, Formula b) { return Formula::binary(Op::Until, std::move(a), std::move(b)); }
inline Formula release(Formula a, Formula b) { return Formula::binary(Op::Release, std::move(a), std::move(b)); }
inline Formula eventually(Formula a) { return Formula::unary(Op::Eventually, std::move(a)); }
inline Formula always(Formula a) { return Formula::unary(Op::Always, std::move(a)); }

inline std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Op::Atom)) {
      out.insert(g.name());
      return;
    }
    for (int k = 0; k < arity(g.op()); ++k) walk(k == 0 ? g.lhs() : g.rhs());
  };
  walk(f);
  return out;
}

/// Replaces atoms by formulas; atoms without an entry are kept.
inline Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub) {
  switch (arity(f.op())) {
    case 0:
      if (f.is(Op::Atom))
        if (auto it = sub.find(f.name()); it != sub.end()) return it->second;
      return f;
    case 1:
      return Formula::unary(f.op(), substitute(f.arg(), sub));
    default:
      return Formula::binary(f.op(), substitute(f.lhs(), sub), substitute(f.rhs(), sub));
  }
}

namespace detail {

// Binding strength used by the printer; mirrors the parser's grammar.
inline int precedence(Op op) {
  switch (op) {
    case Op::Implies:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    case Op::Until:
    case Op::Release:
      return 4;
    case Op::Not:
    case Op::Next:
    case Op::WeakNext:
    case Op::Eventually:
    case Op::Always:
      return 5;
    default:
      return 6;
  }
}

inline const char* symbol(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Not: return "!";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Next: return "X ";
    case Op::WeakNext: return "WX ";
    case Op::Eventually: return "F ";
    case Op::Always: return "G ";
    case Op::Until: return " U ";
    case Op::Release: return " R ";
    case Op::Atom: break;
  }
  return "";
}

inline void print(std::ostream& os, const Formula& f, int min_prec) {
  const int p = precedence(f.op());
  const bool parens = p < min_prec;
  if (parens) os << '(';
  switch (arity(f.op())) {
    case 0:
      if (f.is(Op::Atom))
        os << f.name();
      else
        os << symbol(f.op());
      break;
    case 1:
      os << symbol(f.op());
      print(os, f.arg(), p);
      break;
    default: {
      // & and | associate to the left; U, R and -> to the right.
      const bool right_assoc = f.is(Op::Until) || f.is(Op::Release) || f.is(Op::Implies);
      print(os, f.lhs(), right_assoc ? p + 1 : p);
      os << symbol(f.op());
      print(os, f.rhs(), right_assoc ? p : p + 1);
      break;
    }
  }
  if (parens) os << ')';
}

}  // namespace detail

/// Renders in the concrete syntax accepted by parse(); parse(to_string(f)) == f.
inline std::string to_string(const Formula& f) {
  std::ostringstream os;
  detail::print(os, f, 0);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
  detail::print(os, f, 0);
  return os;
}

}  // namespace syft
