#pragma once

// Random-conjunction benchmark family RC(L) and a timed driver for the two
// synthesis pipelines.
//
// Basis templates use placeholders x1, x2, ... (inputs) and y1, y2, ...
// (outputs). gen_rc draws L templates and renames every placeholder to a
// random name from a pool of its role: i0..i{m-1} for inputs, o0..o{m-1} for
// outputs. Pool names may repeat across and within conjuncts.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "syft/common.hpp"
#include "syft/dfa_builder.hpp"
#include "syft/formula.hpp"
#include "syft/minimize.hpp"
#include "syft/parser.hpp"
#include "syft/partition.hpp"
#include "syft/solver.hpp"
#include "syft/strategy.hpp"
#include "syft/symbolic.hpp"

namespace syft {

struct BasisCase {
  std::string name;
  Formula formula;
  bool realizable = false;  ///< label, checked against the game oracle in tests

  bool is_input_placeholder(const std::string& a) const { return !a.empty() && a[0] == 'x'; }
};

inline Partition basis_partition(const BasisCase& c) {
  std::vector<std::string> in, out;
  for (const auto& a : atoms_of(c.formula)) (c.is_input_placeholder(a) ? in : out).push_back(a);
  return Partition(std::move(in), std::move(out));
}

inline const std::vector<BasisCase>& default_basis() {
  static const std::vector<BasisCase> basis = [] {
    const std::vector<std::tuple<const char*, const char*, bool>> rows = {
        {"response", "G(x1 -> F y1)", true},
        {"existence", "F y1", true},
        {"env_existence", "F x1", false},
        {"invariant", "G y1", true},
        {"wait_for_env", "y1 U x1", false},
        {"mirror", "G((x1 -> y1) & (y1 -> x1))", false},
        {"delayed_output", "X y1", true},
        {"absence_conflict", "G !y1 & F y1", false},
        {"guarded", "x1 -> y1", true},
        {"predict_now", "(y1 -> x1) & (x1 -> y1)", false},
        {"echo_next", "(x1 -> X y1) & (X y1 -> x1)", true},
        {"predict_next", "X((y1 -> x1) & (x1 -> y1))", false},
        {"strong_next_obligation", "G(x1 -> X y1)", false},
        {"weak_next_obligation", "G(x1 -> WX y1)", true},
        {"joint_existence", "F(x1 & y1)", false},
        {"either_existence", "F(x1 | y1)", true},
        {"until_output", "x1 U y1", true},
        {"conflicting_guards", "G(x1 -> y1) & G(x2 -> !y1)", false},
        {"chained_until", "y1 U (y2 U y3)", true},
        {"ordered_outputs", "F(y1 & X y2) & G(y1 -> !y2)", true},
        {"recurrence", "G F y1", true},
        {"env_persistence", "F G x1", false},
        {"response_with_step", "G(x1 -> F(y1 & X y2))", false},
        {"release", "x1 R y1", true},
        {"single_step", "WX false & y1", true},
    };
    std::vector<BasisCase> b;
    for (const auto& [name, text, label] : rows) b.push_back({name, parse(text), label});
    return b;
  }();
  return basis;
}

struct BenchConfig {
  std::size_t L = 5;
  std::size_t m = 8;
  std::uint64_t seed = 1;
  std::size_t count = 1;
};

struct BenchCase {
  std::string name;
  Formula formula;
  Partition partition;
};

inline std::vector<BenchCase> gen_rc(const BenchConfig& cfg, const std::vector<BasisCase>& basis = default_basis()) {
  if (basis.empty()) throw std::invalid_argument("gen_rc: empty basis");
  if (cfg.L == 0 || cfg.m == 0) throw std::invalid_argument("gen_rc: L and m must be positive");
  std::mt19937_64 rng(cfg.seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<BenchCase> out;
  for (std::size_t k = 0; k < cfg.count; ++k) {
    std::vector<Formula> conjuncts;
    std::set<std::string> used_in, used_out;
    for (std::size_t c = 0; c < cfg.L; ++c) {
      const BasisCase& b = basis[pick(basis.size())];
      std::map<std::string, Formula> sub;
      for (const auto& a : atoms_of(b.formula)) {
        const bool in = b.is_input_placeholder(a);
        const std::string fresh = (in ? "i" : "o") + std::to_string(pick(cfg.m));
        (in ? used_in : used_out).insert(fresh);
        sub.emplace(a, atom(fresh));
      }
      conjuncts.push_back(substitute(b.formula, sub));
    }
    Formula f = conjuncts.front();
    for (std::size_t c = 1; c < conjuncts.size(); ++c) f = land(f, conjuncts[c]);
    std::ostringstream name;
    name << "rc_L" << cfg.L << "_m" << cfg.m << "_s" << cfg.seed << "_" << k;
    out.push_back({name.str(), f,
                   Partition({used_in.begin(), used_in.end()}, {used_out.begin(), used_out.end()})});
  }
  return out;
}

enum class Engine { Explicit, Symbolic };

inline const char* to_string(Engine e) { return e == Engine::Explicit ? "explicit" : "symbolic"; }

struct BenchRow {
  std::string name;
  Engine engine = Engine::Symbolic;
  std::string verdict;  ///< REALIZABLE, UNREALIZABLE, TIMEOUT or ERROR
  double dfa_ms = 0;
  double solve_ms = 0;
  double total_ms = 0;
  std::size_t states = 0;
  std::size_t z_bits = 0;  ///< 0 for the explicit engine
  std::size_t x_vars = 0;
  std::size_t y_vars = 0;
  bool timeout = false;
  std::string error;

  bool completed() const { return verdict == "REALIZABLE" || verdict == "UNREALIZABLE"; }
};

inline constexpr const char* kBenchCsvHeader =
    "name,engine,verdict,dfa_ms,solve_ms,total_ms,states,z_bits,x_vars,y_vars,timeout";

struct EngineOptions {
  std::size_t node_cap = DdManager::kDefaultNodeCap;
};

/// One pipeline run. dfa_ms covers construction and minimization, plus the
/// state-bit encoding for the symbolic engine; solve_ms covers the game and
/// strategy extraction.
inline BenchRow run_case(const BenchCase& c, Engine engine, std::chrono::milliseconds timeout,
                         const EngineOptions& eo = {}) {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  BenchRow row;
  row.name = c.name;
  row.engine = engine;
  row.x_vars = c.partition.num_inputs();
  row.y_vars = c.partition.num_outputs();
  const Deadline deadline = Deadline::after(timeout);
  const auto t0 = Clock::now();
  auto t1 = t0;
  try {
    BuildOptions bo;
    bo.node_cap = eo.node_cap;
    bo.deadline = deadline;
    const ExplicitDfa d = minimize(build_dfa(c.formula, c.partition, bo), deadline);
    row.states = d.num_states();
    if (engine == Engine::Explicit) {
      require_explicit_alphabet(d);
      t1 = Clock::now();
      const ExplicitSolution sol = solve_explicit(d, deadline);
      if (sol.realizable) build_explicit_transducer(d, sol);
      row.verdict = sol.realizable ? "REALIZABLE" : "UNREALIZABLE";
    } else {
      const SymbolicDfa sd = encode(d, eo.node_cap, deadline);
      row.z_bits = sd.z_vars.size();
      t1 = Clock::now();
      const SymbolicSolution sol = solve_symbolic(sd, deadline);
      if (sol.realizable) build_symbolic_transducer(sd, synthesize_tau(sol, sd));
      row.verdict = sol.realizable ? "REALIZABLE" : "UNREALIZABLE";
    }
  } catch (const TimeoutError&) {
    row.verdict = "TIMEOUT";
    row.timeout = true;
  } catch (const std::exception& e) {
    row.verdict = "ERROR";
    row.error = e.what();
  }
  const auto t2 = Clock::now();
  if (t1 == t0) t1 = t2;  // failed during construction
  row.dfa_ms = ms(t1 - t0);
  row.solve_ms = ms(t2 - t1);
  row.total_ms = ms(t2 - t0);
  return row;
}

/// Runs every case on every engine, in case order. Failures are recorded in
/// the row and never abort the suite.
inline std::vector<BenchRow> run_suite(const std::vector<BenchCase>& cases, const std::vector<Engine>& engines,
                                       std::chrono::milliseconds timeout, const EngineOptions& eo = {}) {
  std::vector<BenchRow> rows;
  for (const auto& c : cases)
    for (Engine e : engines) rows.push_back(run_case(c, e, timeout, eo));
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.name << ',' << to_string(r.engine) << ',' << r.verdict << ',' << r.dfa_ms << ',' << r.solve_ms << ','
       << r.total_ms << ',' << r.states << ',' << r.z_bits << ',' << r.x_vars << ',' << r.y_vars << ','
       << (r.timeout ? 1 : 0) << '\n';
  }
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace syft
