#include <gtest/gtest.h>

#include <random>

#include "support/corpus.hpp"
#include "syft/dfa_builder.hpp"
#include "syft/minimize.hpp"
#include "syft/parser.hpp"
#include "syft/progression.hpp"

using namespace syft;
using syft::testing::atom_names;
using syft::testing::for_each_word;
using syft::testing::formula_corpus;
using syft::testing::moore_classes;

namespace {

Partition outputs_only(std::vector<std::string> atoms) { return Partition({}, std::move(atoms)); }

ExplicitDfa dfa_of(const std::string& text, const Partition& p) { return build_dfa(parse(text), p); }

std::size_t count_classes(const std::vector<int>& cls) {
  std::set<int> s;
  for (int c : cls)
    if (c >= 0) s.insert(c);
  return s.size();
}

}  // namespace

TEST(Progression, Examples) {
  const std::vector<std::string> order{"a", "b"};
  EXPECT_EQ(progress(atom("a"), 0b01, order), top());
  EXPECT_EQ(progress(atom("a"), 0b10, order), bottom());
  EXPECT_EQ(progress(next(atom("b")), 0b01, order), land(atom("b"), until(top(), top())));
  const Formula aub = until(atom("a"), atom("b"));
  EXPECT_EQ(progress(aub, 0b01, order), aub);
  EXPECT_EQ(progress(aub, 0b10, order), top());
  EXPECT_EQ(progress(aub, 0b00, order), bottom());
  EXPECT_THROW(progress(lnot(next(atom("a"))), 0, order), std::invalid_argument);
}

TEST(Progression, EmpExamples) {
  EXPECT_TRUE(emp(release(bottom(), atom("a"))));
  EXPECT_FALSE(emp(until(top(), atom("a"))));
  EXPECT_TRUE(emp(top()));
  EXPECT_FALSE(emp(atom("a")));
  EXPECT_TRUE(emp(lnot(atom("a"))));
  EXPECT_FALSE(emp(next(top())));
  EXPECT_TRUE(emp(weak_next(bottom())));
  EXPECT_THROW(emp(implies(atom("a"), atom("b"))), std::invalid_argument);
}

// For every trace t with t[0] = l: f holds on t iff (|t| = 1 and emp(progress))
// or progress holds on the rest of t.
TEST(Progression, SoundnessAgainstTraceSemantics) {
  const auto atoms = atom_names(2);
  for (const Formula& raw : formula_corpus(250, 2, 31)) {
    const Formula f = to_nnf(raw);
    for (Letter l = 0; l < 4; ++l) {
      const Formula r = progress(f, l, atoms);
      ASSERT_TRUE(is_nnf(r));
      ASSERT_EQ(eval_trace(f, trace_from_letters({l}, atoms), 0), emp(r)) << f;
      for_each_word(2, 3, [&](const std::vector<Letter>& rest) {
        std::vector<Letter> w{l};
        w.insert(w.end(), rest.begin(), rest.end());
        ASSERT_EQ(eval_trace(f, trace_from_letters(w, atoms), 0), eval_trace(r, trace_from_letters(rest, atoms), 0))
            << f << " after " << l;
      });
    }
  }
}

TEST(Simplify, PreservesSemantics) {
  const auto atoms = atom_names(2);
  for (const Formula& raw : formula_corpus(200, 2, 41)) {
    const Formula f = to_nnf(raw);
    const Formula s = simplify(f);
    for_each_word(2, 3, [&](const std::vector<Letter>& w) {
      const Trace t = trace_from_letters(w, atoms);
      ASSERT_EQ(eval_trace(f, t, 0), eval_trace(s, t, 0)) << f << " vs " << s;
    });
  }
  EXPECT_EQ(simplify(land(atom("a"), lnot(atom("a")))), bottom());
  EXPECT_EQ(simplify(lor(atom("a"), land(atom("a"), atom("b")))), atom("a"));
  EXPECT_EQ(simplify(land(atom("b"), atom("a"))), simplify(land(atom("a"), atom("b"))));
}

TEST(BuildDfa, EventuallyA) {
  const ExplicitDfa d = minimize(dfa_of("F a", outputs_only({"a"})));
  ASSERT_EQ(d.num_states(), 2u);
  EXPECT_FALSE(d.accepting[d.initial]);
  EXPECT_EQ(d.next(d.initial, 0), d.initial);
  const StateId sink = d.next(d.initial, 1);
  EXPECT_TRUE(d.accepting[sink]);
  EXPECT_EQ(d.next(sink, 0), sink);
  EXPECT_EQ(d.next(sink, 1), sink);
}

TEST(BuildDfa, SingleAtom) {
  const ExplicitDfa d = minimize(dfa_of("a", outputs_only({"a"})));
  ASSERT_EQ(d.num_states(), 3u);
  const StateId yes = d.next(d.initial, 1), no = d.next(d.initial, 0);
  EXPECT_TRUE(d.accepting[yes]);
  EXPECT_FALSE(d.accepting[no]);
  EXPECT_EQ(d.residual[yes], top());
  EXPECT_EQ(d.residual[no], bottom());
}

// The entry state is never accepting (models are nonempty), so True needs a
// non-accepting entry plus an accepting sink.
TEST(BuildDfa, TrueAndFalse) {
  const ExplicitDfa t = minimize(dfa_of("true", outputs_only({"a"})));
  EXPECT_EQ(t.num_states(), 2u);
  EXPECT_FALSE(t.accepting[t.initial]);
  EXPECT_TRUE(t.accepts({0}));
  const ExplicitDfa f = minimize(dfa_of("false", outputs_only({"a"})));
  EXPECT_EQ(f.num_states(), 1u);
  EXPECT_FALSE(f.accepting[0]);
}

TEST(BuildDfa, NegatedInputEntryNotAccepting) {
  const ExplicitDfa d = minimize(dfa_of("!x", Partition({"x"}, {"y"})));
  EXPECT_FALSE(d.accepting[d.initial]);
  EXPECT_TRUE(d.accepts({0}));
  EXPECT_FALSE(d.accepts({1}));
}

TEST(BuildDfa, LanguageMatchesSemantics) {
  std::mt19937_64 rng(5);
  for (const Formula& f : formula_corpus(150, 3, 51)) {
    const Partition p = syft::testing::random_partition(f, rng);
    const ExplicitDfa d = build_dfa(f, p);
    const auto atoms = p.atoms();
    for_each_word(atoms.size(), atoms.size() == 3 ? 4 : 5, [&](const std::vector<Letter>& w) {
      ASSERT_EQ(d.accepts(w), eval_trace(f, trace_from_letters(w, atoms), 0)) << f;
    });
  }
}

TEST(BuildDfa, Totality) {
  for (const Formula& f : formula_corpus(60, 3, 52)) {
    const Partition p = outputs_only(atom_names(3));
    const ExplicitDfa d = build_dfa(f, p);
    for (StateId s = 0; s < d.num_states(); ++s)
      for (Letter l = 0; l < 8; ++l) ASSERT_LT(d.next(s, l), d.num_states());
  }
}

TEST(BuildDfa, Errors) {
  EXPECT_THROW(dfa_of("a & z", outputs_only({"a"})), std::invalid_argument);
  std::vector<std::string> many;
  for (int i = 0; i < 31; ++i) many.push_back("p" + std::to_string(i));
  EXPECT_THROW(build_dfa(atom("p0"), outputs_only(many)), std::length_error);
  BuildOptions tight;
  tight.max_states = 2;
  EXPECT_THROW(build_dfa(parse("X X X a"), outputs_only({"a"}), tight), StateExplosion);
  BuildOptions expired;
  expired.deadline = Deadline::after(std::chrono::milliseconds(0));
  EXPECT_THROW(build_dfa(parse("F a"), outputs_only({"a"}), expired), TimeoutError);
}

// Symbolic transitions let construction go past the explicit alphabet cap.
TEST(BuildDfa, WideAlphabet) {
  std::vector<std::string> many;
  Formula all = top();
  for (int i = 0; i < 24; ++i) {
    many.push_back("p" + std::to_string(i));
    all = land(all, atom(many.back()));
  }
  const ExplicitDfa d = build_dfa(eventually(all), outputs_only(many));
  EXPECT_LE(d.num_states(), 3u);
  EXPECT_TRUE(d.accepts({(Letter{1} << 24) - 1}));
  EXPECT_FALSE(d.accepts({(Letter{1} << 23) - 1}));
  EXPECT_THROW(require_explicit_alphabet(d), std::length_error);
}

TEST(Minimize, LanguagePreservedAndMinimal) {
  std::mt19937_64 rng(6);
  for (const Formula& f : formula_corpus(150, 3, 61)) {
    const Partition p = syft::testing::random_partition(f, rng);
    const ExplicitDfa d = build_dfa(f, p);
    const ExplicitDfa m = minimize(d);
    ASSERT_LE(m.num_states(), d.num_states());
    ASSERT_EQ(m.initial, 0u);
    // Every state reachable and no two states equivalent.
    const auto cls = moore_classes(m);
    for (int c : cls) ASSERT_GE(c, 0);
    ASSERT_EQ(count_classes(cls), m.num_states()) << f;
    ASSERT_EQ(count_classes(moore_classes(d)), m.num_states()) << f;
    for_each_word(p.num_atoms(), 4, [&](const std::vector<Letter>& w) { ASSERT_EQ(d.accepts(w), m.accepts(w)); });
  }
}

TEST(Minimize, Idempotent) {
  for (const Formula& f : formula_corpus(50, 2, 62)) {
    const ExplicitDfa m1 = minimize(build_dfa(f, outputs_only(atom_names(2))));
    const ExplicitDfa m2 = minimize(m1);
    ASSERT_EQ(m1.num_states(), m2.num_states());
    for (StateId s = 0; s < m1.num_states(); ++s) {
      ASSERT_EQ(m1.accepting[s], m2.accepting[s]);
      for (Letter l = 0; l < 4; ++l) ASSERT_EQ(m1.next(s, l), m2.next(s, l));
    }
  }
}

TEST(Minimize, RedundancyCollapses) {
  const Partition p = outputs_only({"a"});
  const ExplicitDfa m1 = minimize(dfa_of("a | a", p)), m2 = minimize(dfa_of("a", p));
  ASSERT_EQ(m1.num_states(), m2.num_states());
  EXPECT_EQ(export_table(m1), export_table(m2));
}

TEST(Export, DotForEventually) {
  const ExplicitDfa d = minimize(dfa_of("F a", outputs_only({"a"})));
  const std::string dot = export_dot(d);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
  EXPECT_EQ(edges, 4u);  // init arrow + 3 edge groups
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}

TEST(Export, DotForSingleStates) {
  const ExplicitDfa f = minimize(dfa_of("false", outputs_only({"a"})));
  const std::string dot = export_dot(f);
  EXPECT_EQ(dot.find("doublecircle"), std::string::npos);
}

TEST(Export, TableListsEveryLetter) {
  const ExplicitDfa d = minimize(dfa_of("F a", outputs_only({"a"})));
  const std::string table = export_table(d);
  EXPECT_EQ(table.rfind("states 2 initial 0", 0), 0u);
  EXPECT_NE(table.find("0 1 1"), std::string::npos);
  EXPECT_NE(table.find("accepting: 1"), std::string::npos);
}
