#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syft/common.hpp"
#include "syft/formula.hpp"

namespace syft {

/// Split of the atom universe into environment inputs (X) and controller
/// outputs (Y). Atom order is inputs followed by outputs; letter bit k refers
/// to atoms()[k].
class Partition {
 public:
  Partition() = default;

  Partition(std::vector<std::string> inputs, std::vector<std::string> outputs)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    std::set<std::string> seen;
    for (const auto& n : atoms()) {
      if (!is_identifier(n)) throw std::invalid_argument("invalid atom name '" + n + "'");
      if (!seen.insert(n).second) throw std::invalid_argument("atom '" + n + "' listed twice in partition");
    }
  }

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t num_atoms() const { return inputs_.size() + outputs_.size(); }

  std::vector<std::string> atoms() const {
    std::vector<std::string> all = inputs_;
    all.insert(all.end(), outputs_.begin(), outputs_.end());
    return all;
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (inputs_[i] == name) return i;
    for (std::size_t i = 0; i < outputs_.size(); ++i)
      if (outputs_[i] == name) return inputs_.size() + i;
    return std::nullopt;
  }

  bool is_input(std::string_view name) const {
    return std::find(inputs_.begin(), inputs_.end(), name) != inputs_.end();
  }
  bool is_output(std::string_view name) const {
    return std::find(outputs_.begin(), outputs_.end(), name) != outputs_.end();
  }

  bool covers(const Formula& f) const {
    for (const auto& a : atoms_of(f))
      if (!index_of(a)) return false;
    return true;
  }

  Letter join(Letter x, Letter y) const { return x | (y << inputs_.size()); }
  Letter input_part(Letter l) const { return l & ((Letter{1} << inputs_.size()) - 1); }
  Letter output_part(Letter l) const { return l >> inputs_.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

/// Reads the two-line `.inputs:` / `.outputs:` format.
inline Partition parse_partition(std::string_view text) {
  std::optional<std::vector<std::string>> ins, outs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    std::vector<std::string> names;
    for (std::string n; ls >> n;) names.push_back(n);
    if (head == ".inputs:") {
      if (ins) throw SyntaxError("duplicate .inputs line", lineno, 1);
      ins = std::move(names);
    } else if (head == ".outputs:") {
      if (outs) throw SyntaxError("duplicate .outputs line", lineno, 1);
      outs = std::move(names);
    } else {
      throw SyntaxError("expected '.inputs:' or '.outputs:'", lineno, 1);
    }
  }
  if (!ins || !outs) throw SyntaxError("partition needs both .inputs: and .outputs: lines", lineno, 1);
  return Partition(std::move(*ins), std::move(*outs));
}

inline std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << ".inputs:";
  for (const auto& n : p.inputs()) os << ' ' << n;
  os << "\n.outputs:";
  for (const auto& n : p.outputs()) os << ' ' << n;
  os << '\n';
  return os.str();
}

/// Renders the bits of `l` over `count` variables, first variable leftmost.
inline std::string bits_to_string(Letter l, std::size_t count) {
  std::string s(count, '0');
  for (std::size_t k = 0; k < count; ++k)
    if (l >> k & 1U) s[k] = '1';
  return s;
}

inline Letter bits_from_string(std::string_view s) {
  if (s.size() > kMaxLetterWidth) throw std::invalid_argument("letter too wide");
  Letter l = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1')
      l |= Letter{1} << k;
    else if (s[k] != '0')
      throw std::invalid_argument("bad letter bits '" + std::string(s) + "'");
  }
  return l;
}

}  // namespace syft
