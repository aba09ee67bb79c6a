// Command-line front end.
//
//   syft synth FORMULA PARTITION [--engine symbolic|explicit] [--out T.json] [--dot T.dot]
//   syft dfa FORMULA PARTITION [--table] [--no-minimize] [--out FILE]
//   syft run TRANSDUCER.json INPUTS
//   syft check FORMULA TRACE
//   syft reduce FORMULA PARTITION [--partition-out FILE]
//   syft bench [--L 5] [--m 8] [--seeds 30] [--count 1] [--timeout-ms 10000] [--engine both] [--out FILE]
//
// synth exits 0 when realizable, 1 when unrealizable; check exits 0 on SAT
// and 1 on UNSAT. Every error exits 2 with a message on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "syft/syft.hpp"

using namespace syft;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t node_cap_from_env() {
  const char* s = std::getenv("SYFT_NODE_CAP");
  if (!s || !*s) return DdManager::kDefaultNodeCap;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size() || v < 2) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("SYFT_NODE_CAP must be an integer >= 2, got '") + s + "'");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

Partition load_partition(const std::string& path) { return parse_partition(read_file(path)); }

void require_covered(const Formula& f, const Partition& p) {
  for (const auto& a : atoms_of(f))
    if (!p.index_of(a)) throw std::invalid_argument("atom '" + a + "' is not in the partition");
}

// One line per step. Tokens are separated by blanks or commas; `name` or
// `name=1` sets an atom, `name=0` clears it. Lines starting with # are skipped.
std::vector<std::vector<std::pair<std::string, bool>>> read_assignments(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::pair<std::string, bool>>> steps;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    std::vector<std::pair<std::string, bool>> step;
    for (std::string tok; ls >> tok;) {
      const auto eq = tok.find('=');
      std::string name = tok.substr(0, eq);
      bool value = true;
      if (eq != std::string::npos) {
        const std::string v = tok.substr(eq + 1);
        if (v != "0" && v != "1") throw std::invalid_argument("bad value in '" + tok + "' (expected 0 or 1)");
        value = v == "1";
      }
      if (!is_identifier(name)) throw std::invalid_argument("bad atom name in '" + tok + "'");
      step.emplace_back(std::move(name), value);
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

int cmd_synth(const std::string& formula_path, const std::string& partition_path, const std::string& engine,
              const std::string& out_path, const std::string& dot_path) {
  const Formula f = parse_file(formula_path);
  const Partition p = load_partition(partition_path);
  require_covered(f, p);
  BuildOptions bo;
  bo.node_cap = node_cap_from_env();
  const ExplicitDfa d = minimize(build_dfa(f, p, bo));

  std::optional<ExplicitTransducer> tr;
  bool realizable = false;
  if (engine == "explicit") {
    const ExplicitSolution sol = solve_explicit(d);
    realizable = sol.realizable;
    if (realizable && (!out_path.empty() || !dot_path.empty())) tr = build_explicit_transducer(d, sol);
  } else {
    const SymbolicDfa sd = encode(d, bo.node_cap);
    const SymbolicSolution sol = solve_symbolic(sd);
    realizable = sol.realizable;
    if (realizable && (!out_path.empty() || !dot_path.empty()))
      tr = to_explicit(build_symbolic_transducer(sd, synthesize_tau(sol, sd)));
  }
  std::cout << (realizable ? "REALIZABLE" : "UNREALIZABLE") << "\n";
  if (tr) {
    if (!out_path.empty()) write_text(out_path, to_json(*tr).dump(2) + "\n");
    if (!dot_path.empty()) write_text(dot_path, transducer_dot(*tr));
  }
  return realizable ? 0 : 1;
}

int cmd_dfa(const std::string& formula_path, const std::string& partition_path, bool table, bool no_minimize,
            const std::string& out_path) {
  const Formula f = parse_file(formula_path);
  const Partition p = load_partition(partition_path);
  require_covered(f, p);
  BuildOptions bo;
  bo.node_cap = node_cap_from_env();
  ExplicitDfa d = build_dfa(f, p, bo);
  if (!no_minimize) d = minimize(d);
  write_text(out_path, table ? export_table(d) : export_dot(d));
  return 0;
}

int cmd_run(const std::string& transducer_path, const std::string& inputs_path) {
  const ExplicitTransducer tr = transducer_from_json(nlohmann::json::parse(read_file(transducer_path)));
  const Partition& p = tr.partition;
  std::vector<Letter> inputs;
  std::size_t lineno = 0;
  for (const auto& step : read_assignments(inputs_path)) {
    ++lineno;
    Letter x = 0;
    std::vector<bool> seen(p.num_inputs(), false);
    for (const auto& [name, value] : step) {
      if (!p.is_input(name)) throw std::invalid_argument("line " + std::to_string(lineno) + ": '" + name + "' is not an input");
      const std::size_t k = *p.index_of(name);
      seen[k] = true;
      if (value) x |= Letter{1} << k;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) throw std::invalid_argument("line " + std::to_string(lineno) + ": input '" + p.inputs()[k] + "' not assigned");
    inputs.push_back(x);
  }
  if (inputs.empty()) throw std::invalid_argument("no input lines");
  const Run r = run(tr, inputs);
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    std::cout << "step " << i << " in " << bits_to_string(s.input, p.num_inputs()) << " out "
              << bits_to_string(s.output, p.num_outputs()) << " state " << s.state << "\n";
  }
  if (r.accepted_at)
    std::cout << "accepted_at " << *r.accepted_at << "\n";
  else
    std::cout << "accepted_at none\n";
  return 0;
}

int cmd_check(const std::string& formula_path, const std::string& trace_path) {
  const Formula f = parse_file(formula_path);
  Trace t;
  for (const auto& step : read_assignments(trace_path)) {
    std::set<std::string> s;
    for (const auto& [name, value] : step)
      if (value) s.insert(name);
    t.push_back(std::move(s));
  }
  if (t.empty()) throw std::invalid_argument("trace is empty");
  const bool sat = eval_trace(f, t, 0);
  std::cout << (sat ? "SAT" : "UNSAT") << "\n";
  return sat ? 0 : 1;
}

int cmd_reduce(const std::string& formula_path, const std::string& partition_path, const std::string& partition_out) {
  const Formula f = parse_file(formula_path);
  const Partition p = load_partition(partition_path);
  require_covered(f, p);
  const LtlProblem r = reduce(f, p);
  std::cout << r.formula << "\n";
  if (partition_out.empty())
    std::cout << to_string(r.partition);
  else
    write_text(partition_out, to_string(r.partition));
  return 0;
}

int cmd_bench(std::size_t L, std::size_t m, std::size_t seeds, std::size_t count, long timeout_ms,
              const std::string& engine, const std::string& out_path) {
  std::vector<BenchCase> cases;
  for (std::uint64_t s = 1; s <= seeds; ++s) {
    auto c = gen_rc({L, m, s, count});
    cases.insert(cases.end(), c.begin(), c.end());
  }
  std::vector<Engine> engines;
  if (engine != "symbolic") engines.push_back(Engine::Explicit);
  if (engine != "explicit") engines.push_back(Engine::Symbolic);
  EngineOptions eo;
  eo.node_cap = node_cap_from_env();
  const auto rows = run_suite(cases, engines, std::chrono::milliseconds(timeout_ms), eo);
  std::ostringstream os;
  write_csv(os, rows);
  write_text(out_path, os.str());
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << r.name << " (" << to_string(r.engine) << "): " << r.error << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTLf synthesis toolkit"};
  app.require_subcommand(1);

  std::string formula, partition, engine = "symbolic", out, dot, transducer, inputs, trace, partition_out;
  bool table = false, no_minimize = false;
  std::size_t L = 5, m = 8, seeds = 30, count = 1;
  long timeout_ms = 10000;
  std::string bench_engine = "both", bench_out = "-";
  std::string dfa_out = "-";

  auto* synth = app.add_subcommand("synth", "decide realizability and emit a transducer");
  synth->add_option("formula", formula, "LTLf formula file")->required();
  synth->add_option("partition", partition, "partition file")->required();
  synth->add_option("--engine", engine, "symbolic or explicit")->check(CLI::IsMember({"symbolic", "explicit"}));
  synth->add_option("--out", out, "write the transducer as JSON");
  synth->add_option("--dot", dot, "write the transducer as Graphviz");

  auto* dfa = app.add_subcommand("dfa", "print the automaton of a formula");
  dfa->add_option("formula", formula, "LTLf formula file")->required();
  dfa->add_option("partition", partition, "partition file")->required();
  dfa->add_flag("--table", table, "plain transition table instead of Graphviz");
  dfa->add_flag("--no-minimize", no_minimize, "skip minimization");
  dfa->add_option("--out", dfa_out, "output file, - for stdout");

  auto* runc = app.add_subcommand("run", "replay inputs against a transducer");
  runc->add_option("transducer", transducer, "transducer JSON")->required();
  runc->add_option("inputs", inputs, "one input letter per line as name=0/1 pairs")->required();

  auto* check = app.add_subcommand("check", "evaluate a formula on a finite trace");
  check->add_option("formula", formula, "LTLf formula file")->required();
  check->add_option("trace", trace, "one step per line as name=0/1 pairs")->required();

  auto* red = app.add_subcommand("reduce", "emit the infinite-trace LTL image");
  red->add_option("formula", formula, "LTLf formula file")->required();
  red->add_option("partition", partition, "partition file")->required();
  red->add_option("--partition-out", partition_out, "write the extended partition here instead of stdout");

  auto* bench = app.add_subcommand("bench", "run the random-conjunction suite");
  bench->add_option("--L", L, "conjuncts per case")->check(CLI::PositiveNumber);
  bench->add_option("--m", m, "pool size per role")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", seeds, "seeds 1..N")->check(CLI::PositiveNumber);
  bench->add_option("--count", count, "cases per seed")->check(CLI::PositiveNumber);
  bench->add_option("--timeout-ms", timeout_ms, "per case and engine")->check(CLI::PositiveNumber);
  bench->add_option("--engine", bench_engine, "explicit, symbolic or both")
      ->check(CLI::IsMember({"explicit", "symbolic", "both"}));
  bench->add_option("--out", bench_out, "CSV file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth) return cmd_synth(formula, partition, engine, out, dot);
    if (*dfa) return cmd_dfa(formula, partition, table, no_minimize, dfa_out);
    if (*runc) return cmd_run(transducer, inputs);
    if (*check) return cmd_check(formula, trace);
    if (*red) return cmd_reduce(formula, partition, partition_out);
    if (*bench) return cmd_bench(L, m, seeds, count, timeout_ms, bench_engine, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
