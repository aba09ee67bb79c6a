// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "syft/syft.hpp"

using namespace syft;
using syft::testing::formula_corpus;
using syft::testing::random_partition;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, Clock::time_point start) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("[%s] AC%d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string str(const Formula& f) { return to_string(f); }

// AC1 ------------------------------------------------------------------------

Outcome language_soundness() {
  const auto corpus = formula_corpus(240, 3, 2024, 3);
  std::mt19937_64 rng(11);
  std::size_t traces = 0, mismatches = 0;
  std::string first;
  for (const Formula& raw : corpus) {
    const Formula f = to_nnf(raw);
    const Partition p = random_partition(f, rng);
    const auto atoms = p.atoms();
    const ExplicitDfa built = build_dfa(f, p);
    const ExplicitDfa small = minimize(built);
    const Letter alphabet = Letter{1} << p.num_atoms();
    std::vector<Letter> word;
    std::function<void(StateId, StateId)> rec = [&](StateId a, StateId b) {
      for (Letter l = 0; l < alphabet; ++l) {
        const StateId na = built.next(a, l), nb = small.next(b, l);
        word.push_back(l);
        const bool expected = eval_trace(f, trace_from_letters(word, atoms), 0);
        ++traces;
        if (built.accepting[na] != expected || small.accepting[nb] != expected) {
          if (mismatches++ == 0) first = str(f);
        }
        if (word.size() < 6) rec(na, nb);
        word.pop_back();
      }
    };
    rec(built.initial, small.initial);
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = std::to_string(corpus.size()) + " NNF formulas, " + std::to_string(traces) + " traces, " +
             std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

// AC2-AC4 ----------------------------------------------------------------------

struct Instance {
  std::string label;
  Formula formula;
  ExplicitDfa dfa;
};

std::vector<Instance> synthesis_instances() {
  std::vector<Instance> out;
  std::mt19937_64 rng(23);
  for (const Formula& f : formula_corpus(160, 3, 77, 3)) {
    ExplicitDfa d = minimize(build_dfa(f, random_partition(f, rng)));
    if (d.num_states() <= 200) out.push_back({str(f), f, std::move(d)});
  }
  for (const BasisCase& b : default_basis())
    out.push_back({b.name, b.formula, minimize(build_dfa(b.formula, basis_partition(b)))});
  for (const Formula& f : formula_corpus(60, 3, 78, 5)) {
    ExplicitDfa d = minimize(build_dfa(f, random_partition(f, rng)));
    if (d.num_states() <= 200) out.push_back({str(f), f, std::move(d)});
  }
  std::vector<BenchCase> cases;
  for (std::uint64_t s = 1; s <= 40; ++s) {
    for (BenchCase& c : gen_rc({2, 3, s, 1})) cases.push_back(std::move(c));
    for (BenchCase& c : gen_rc({5, 4, s, 1})) cases.push_back(std::move(c));
    for (BenchCase& c : gen_rc({8, 3, s, 1})) cases.push_back(std::move(c));
  }
  for (const BenchCase& c : cases) {
    ExplicitDfa d = minimize(build_dfa(c.formula, c.partition));
    if (d.num_states() <= 200 && d.num_atoms() <= 12) out.push_back({c.name, c.formula, std::move(d)});
  }
  return out;
}

bool fixpoint_ok(const SymbolicDfa& sd, const SymbolicSolution& s) {
  if (s.w_history.empty() || s.w_history.front() != sd.acc || s.t_history.front() != sd.acc) return false;
  if (s.iterations > sd.num_states() + 1) return false;
  for (std::size_t i = 0; i + 1 < s.w_history.size(); ++i) {
    if (!(s.w_history[i] & !s.w_history[i + 1]).is_zero()) return false;
    if (!((s.t_history[i + 1] & !s.t_history[i]) & s.w_history[i]).is_zero()) return false;
  }
  return s.w == s.w_history.back() && sd.mgr->exists(sd.y_vars, s.t) == s.w;
}

struct GameResults {
  Outcome agreement, strategies, fixpoints;
};

GameResults games() {
  const auto instances = synthesis_instances();
  std::size_t realizable = 0, verdict_bad = 0, region_bad = 0, strat_bad = 0, plays = 0, trace_bad = 0, fix_bad = 0,
              max_states = 0;
  std::string first_agree, first_strat, first_fix;
  for (const Instance& in : instances) {
    const ExplicitDfa& d = in.dfa;
    max_states = std::max(max_states, d.num_states());
    const ExplicitSolution e = solve_explicit(d);
    const SymbolicDfa sd = encode(d);
    const SymbolicSolution s = solve_symbolic(sd);
    const bool o = oracle_search(d, d.num_states());
    if (e.realizable != o || s.realizable != o) {
      ++verdict_bad;
      if (first_agree.empty()) first_agree = in.label;
    }
    for (StateId q = 0; q < d.num_states(); ++q)
      if (sd.mgr->eval(s.w, sd.assignment(sd.code(q))) != static_cast<bool>(e.winning[q])) {
        ++region_bad;
        if (first_agree.empty()) first_agree = in.label;
        break;
      }
    if (!fixpoint_ok(sd, s)) {
      ++fix_bad;
      if (first_fix.empty()) first_fix = in.label;
    }
    if (!o) continue;
    ++realizable;

    bool ok = true;
    const ExplicitTransducer et = build_explicit_transducer(d, e);
    const SymbolicTransducer st = build_symbolic_transducer(sd, synthesize_tau(s, sd));
    ok &= verify_strategy(d, et);
    ok &= verify_strategy(d, st);
    ok &= verify_strategy(d, to_explicit(st));
    const StrategyOutput from_explicit = [&](StateId q) -> std::optional<Letter> {
      auto it = et.states.find(q);
      if (it == et.states.end() || it->second.accepting) return std::nullopt;
      return it->second.omega;
    };
    const StrategyOutput from_symbolic = [&](StateId q) -> std::optional<Letter> {
      if (d.accepting[q]) return std::nullopt;
      return st.output_at(sd.code(q));
    };
    for (const StrategyOutput* out : {&from_explicit, &from_symbolic})
      for (const Run& r : enumerate_plays(d, *out, d.num_states() + 1)) {
        ++plays;
        if (!r.accepted_at) {
          ok = false;
          continue;
        }
        if (!check_trace(in.formula, d.partition, r)) {
          ++trace_bad;
          ok = false;
        }
      }
    if (!ok) {
      ++strat_bad;
      if (first_strat.empty()) first_strat = in.label;
    }
  }
  GameResults g;
  const std::string n = std::to_string(instances.size());
  g.agreement.pass = instances.size() >= 100 && verdict_bad == 0 && region_bad == 0;
  g.agreement.detail = n + " instances (max |S| " + std::to_string(max_states) + ", " + std::to_string(realizable) +
                       " realizable), verdict mismatches " + std::to_string(verdict_bad) + ", region mismatches " +
                       std::to_string(region_bad) + (first_agree.empty() ? "" : " (first: " + first_agree + ")");
  g.strategies.pass = realizable > 0 && strat_bad == 0;
  g.strategies.detail = std::to_string(realizable) + " realizable instances, " + std::to_string(plays) +
                        " plays, failing instances " + std::to_string(strat_bad) + ", unsatisfied traces " +
                        std::to_string(trace_bad) + (first_strat.empty() ? "" : " (first: " + first_strat + ")");
  g.fixpoints.pass = fix_bad == 0;
  g.fixpoints.detail = n + " symbolic solves, violations " + std::to_string(fix_bad) +
                       (first_fix.empty() ? "" : " (first: " + first_fix + ")");
  return g;
}

// AC5 ------------------------------------------------------------------------

Outcome boolean_synthesis() {
  using syft::testing::RandomBoolExpr;
  std::mt19937_64 rng(5);
  std::size_t relations = 0, violations = 0, with_witness = 0;
  for (; relations < 600; ++relations) {
    const int nin = static_cast<int>(rng() % 4), nout = 1 + static_cast<int>(rng() % 3);
    const int nvars = nin + nout;
    const RandomBoolExpr e = RandomBoolExpr::make(rng, nvars, 4);
    std::vector<std::string> names;
    for (int v = 0; v < nvars; ++v) names.push_back("v" + std::to_string(v));
    DdManager m(names);
    const Bdd xi = e.build<Bdd>([&](int v) { return m.var(static_cast<std::uint32_t>(v)); },
                                [&](bool c) { return c ? m.one() : m.zero(); });
    std::vector<std::uint32_t> outs;
    for (int j = 0; j < nout; ++j) outs.push_back(static_cast<std::uint32_t>(nin + j));
    const auto gamma = m.solve_outputs(xi, outs);
    bool ok = gamma.size() == outs.size();
    for (std::size_t j = 0; ok && j < gamma.size(); ++j)
      for (std::uint32_t v : m.support(gamma[j]))
        if (v >= outs[j]) ok = false;
    for (std::uint32_t in = 0; ok && in < (1U << nin); ++in) {
      bool exists = false;
      for (std::uint32_t y = 0; y < (1U << nout); ++y) exists |= e.eval(in | y << nin);
      if (!exists) continue;
      ++with_witness;
      std::vector<bool> a(nvars, false);
      for (int k = 0; k < nin; ++k) a[k] = (in >> k & 1U) != 0;
      std::uint32_t y = 0;
      for (int j = 0; j < nout; ++j)
        if (m.eval(gamma[j], a)) {
          a[nin + j] = true;
          y |= 1U << j;
        }
      ok = e.eval(in | y << nin);
    }
    if (!ok) ++violations;
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = std::to_string(relations) + " relations, " + std::to_string(with_witness) +
             " inputs with a witness, violations " + std::to_string(violations);
  return o;
}

// AC6 ------------------------------------------------------------------------

Outcome reduction_correspondence() {
  const auto atoms = syft::testing::atom_names(2);
  const std::vector<Lasso> paddings = {
      {{}, {{}}},
      {{{"a"}}, {{"b"}}},
      {{}, {{"a", "b"}, {}}},
      {{{"Tail", "a"}, {"b"}}, {{"a"}, {"Tail"}}},
  };
  const auto corpus = formula_corpus(250, 2, 606, 3);
  std::size_t checks = 0, mismatches = 0;
  std::string first;
  for (const Formula& f : corpus) {
    const Formula image = reduce(f, Partition({}, atoms)).formula;
    syft::testing::for_each_word(2, 4, [&](const std::vector<Letter>& w) {
      const Trace rho = trace_from_letters(w, atoms);
      const bool finite = eval_trace(f, rho, 0);
      for (const Lasso& pad : paddings) {
        ++checks;
        if (finite != eval_lasso(image, tail_extension(rho, pad)) && mismatches++ == 0) first = str(f);
      }
    });
  }
  Outcome o;
  o.pass = mismatches == 0;
  o.detail = std::to_string(corpus.size()) + " formulas, " + std::to_string(checks) + " trace/padding pairs, " +
             std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

// AC7/AC8 --------------------------------------------------------------------

std::vector<BenchRow> rc_rows() {
  std::vector<BenchCase> cases;
  for (std::uint64_t s = 1; s <= 30; ++s) {
    auto c = gen_rc({5, 8, s, 1});
    cases.insert(cases.end(), c.begin(), c.end());
  }
  return run_suite(cases, {Engine::Explicit, Engine::Symbolic}, std::chrono::milliseconds(10000));
}

Outcome scalability(const std::vector<BenchRow>& rows) {
  std::size_t done_e = 0, done_s = 0;
  std::vector<double> te, ts;
  for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
    const BenchRow& e = rows[k];
    const BenchRow& s = rows[k + 1];
    done_e += e.completed();
    done_s += s.completed();
    if (e.completed() && s.completed()) {
      te.push_back(e.solve_ms);
      ts.push_back(s.solve_ms);
    }
  }
  Outcome o;
  std::ostringstream os;
  os << "completed explicit " << done_e << "/30, symbolic " << done_s << "/30";
  if (te.empty()) {
    o.pass = done_s >= done_e;
    os << ", no commonly completed cases";
  } else {
    const double me = median(te), ms = median(ts);
    o.pass = done_s >= done_e && ms <= me;
    os << "; median solve_ms on " << te.size() << " common cases: symbolic " << ms << ", explicit " << me;
  }
  o.detail = os.str();
  return o;
}

Outcome phase_split(const std::vector<BenchRow>& rows) {
  std::ostringstream csv;
  write_csv(csv, rows);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    for (std::string col; std::getline(hs, col, ',');) header.push_back(col);
  }
  auto column = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<long>(i);
    return -1;
  };
  const long dfa = column("dfa_ms"), solve = column("solve_ms");
  Outcome o;
  std::size_t n = 0, bad = 0;
  while (std::getline(in, line)) {
    ++n;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    auto numeric = [&](long i) {
      if (i < 0 || static_cast<std::size_t>(i) >= cells.size() || cells[i].empty()) return false;
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[i], &used);
        return used == cells[i].size() && v >= 0;
      } catch (const std::exception&) {
        return false;
      }
    };
    if (!numeric(dfa) || !numeric(solve)) ++bad;
  }
  o.pass = dfa >= 0 && solve >= 0 && dfa != solve && n == rows.size() && n > 0 && bad == 0;
  o.detail = std::to_string(n) + " CSV rows, rows missing a phase time " + std::to_string(bad);
  return o;
}

}  // namespace

int main() {
  auto t = Clock::now();
  report(1, "language soundness", language_soundness(), t);

  t = Clock::now();
  const GameResults g = games();
  report(2, "solver agreement", g.agreement, t);
  report(3, "strategy correctness", g.strategies, t);
  report(4, "fixpoint structure", g.fixpoints, t);

  t = Clock::now();
  report(5, "boolean synthesis contract", boolean_synthesis(), t);

  t = Clock::now();
  report(6, "reduction correspondence", reduction_correspondence(), t);

  t = Clock::now();
  const auto rows = rc_rows();
  report(7, "scalability ordering", scalability(rows), t);
  report(8, "phase-split reporting", phase_split(rows), t);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
