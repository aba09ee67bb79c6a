#pragma once

// Concrete syntax:
//
//   formula := implies
//   implies := or ( '->' implies )?
//   or      := and ( '|' and )*
//   and     := temp ( '&' temp )*
//   temp    := unary ( ('U' | 'R') temp )?
//   unary   := ('!' | 'X' | 'WX' | 'F' | 'G') unary | primary
//   primary := 'true' | 'false' | identifier | '(' formula ')'
//
// Keywords are reserved and cannot be used as atom names.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "syft/common.hpp"
#include "syft/formula.hpp"

namespace syft {

namespace detail {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Next, WeakNext, Eventually, Always, Until, Release, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cc = col;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), l, cc});
      advance(1);
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '!': single(Tok::Not); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", l, cc});
          advance(2);
          continue;
        }
        throw SyntaxError("unknown token '-'", l, cc);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word(text.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "X") k = Tok::Next;
      else if (word == "WX") k = Tok::WeakNext;
      else if (word == "F") k = Tok::Eventually;
      else if (word == "G") k = Tok::Always;
      else if (word == "U") k = Tok::Until;
      else if (word == "R") k = Tok::Release;
      out.push_back({k, std::move(word), l, cc});
      advance(j - i);
      continue;
    }
    throw SyntaxError(std::string("unknown token '") + c + "'", l, cc);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      take();
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      f = lor(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_temporal();
    while (peek().kind == Tok::And) {
      take();
      f = land(f, parse_temporal());
    }
    return f;
  }

  Formula parse_temporal() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::Until) {
      take();
      return until(lhs, parse_temporal());
    }
    if (peek().kind == Tok::Release) {
      take();
      return release(lhs, parse_temporal());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return lnot(parse_unary());
      case Tok::Next: take(); return next(parse_unary());
      case Tok::WeakNext: take(); return weak_next(parse_unary());
      case Tok::Eventually: take(); return eventually(parse_unary());
      case Tok::Always: take(); return always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::True: take(); return top();
      case Tok::False: take(); return bottom();
      case Tok::Ident: return atom(take().text);
      case Tok::LParen: {
        take();
        Formula f = parse_implies();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return f;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one formula. Throws SyntaxError with line and column.
inline Formula parse(std::string_view text) {
  return detail::Parser(detail::tokenize(text)).parse_all();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Formula parse_file(const std::string& path) { return parse(read_file(path)); }

}  // namespace syft
