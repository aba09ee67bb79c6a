#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "syft/syft.hpp"

namespace fs = std::filesystem;
using namespace syft;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" SYFT_CLI_PATH "\" " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return "\"" + std::string(SYFT_FIXTURES) + "/" + name + "\""; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("syft_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

}  // namespace

TEST(Cli, SynthVerdictsAndExitCodes) {
  const Result yes = cli("synth " + fixture("eventually_y.ltlf") + " " + fixture("xy.part"));
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(first_line(yes.out), "REALIZABLE");
  const Result no = cli("synth " + fixture("eventually_x.ltlf") + " " + fixture("xy.part"));
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(first_line(no.out), "UNREALIZABLE");
}

TEST(Cli, EnginesAgreeOnFixtures) {
  for (const char* f : {"eventually_y.ltlf", "eventually_x.ltlf", "response.ltlf", "until_x.ltlf", "true.ltlf"}) {
    const Result e = cli("synth --engine explicit " + fixture(f) + " " + fixture("xy.part"));
    const Result s = cli("synth --engine symbolic " + fixture(f) + " " + fixture("xy.part"));
    EXPECT_EQ(e.code, s.code) << f;
    EXPECT_EQ(first_line(e.out), first_line(s.out)) << f;
  }
}

TEST(Cli, Errors) {
  EXPECT_EQ(cli("synth /nonexistent.ltlf " + fixture("xy.part")).code, 2);
  EXPECT_EQ(cli("synth " + fixture("eventually_y.ltlf") + " /nonexistent.part").code, 2);
  EXPECT_EQ(cli("synth --engine magic " + fixture("eventually_y.ltlf") + " " + fixture("xy.part")).code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  // Partition not covering the formula.
  TempDir tmp;
  std::ofstream(tmp.file("z.ltlf")) << "F z\n";
  EXPECT_EQ(cli("synth \"" + tmp.file("z.ltlf") + "\" " + fixture("xy.part")).code, 2);
}

TEST(Cli, TransducerRoundTripAndRun) {
  TempDir tmp;
  for (const char* engine : {"explicit", "symbolic"}) {
    const std::string json = tmp.file(std::string(engine) + ".json");
    const std::string dot = tmp.file(std::string(engine) + ".dot");
    const Result r = cli(std::string("synth --engine ") + engine + " " + fixture("eventually_y.ltlf") + " " +
                         fixture("xy.part") + " --out \"" + json + "\" --dot \"" + dot + "\"");
    ASSERT_EQ(r.code, 0);
    const ExplicitTransducer tr = transducer_from_json(nlohmann::json::parse(read_file(json)));
    const ExplicitDfa d = minimize(build_dfa(parse("F y"), tr.partition));
    EXPECT_TRUE(verify_strategy(d, tr)) << engine;
    EXPECT_NE(read_file(dot).find("digraph"), std::string::npos);

    const Result one = cli("run \"" + json + "\" " + fixture("one_input.txt"));
    EXPECT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("accepted_at 0"), std::string::npos) << one.out;
    const Result three = cli("run \"" + json + "\" " + fixture("three_inputs.txt"));
    EXPECT_EQ(three.code, 0);
    // The run stops at the first accepting step.
    EXPECT_NE(three.out.find("step 0 in 1 out 1"), std::string::npos) << three.out;
    EXPECT_EQ(three.out.find("step 1 "), std::string::npos) << three.out;
  }
  std::ofstream(tmp.file("bad_inputs.txt")) << "y=1\n";
  EXPECT_EQ(cli("run \"" + tmp.file("explicit.json") + "\" \"" + tmp.file("bad_inputs.txt") + "\"").code, 2);
}

TEST(Cli, CheckTrace) {
  const Result sat = cli("check " + fixture("response.ltlf") + " " + fixture("trace_sat.txt"));
  EXPECT_EQ(sat.code, 0);
  EXPECT_EQ(first_line(sat.out), "SAT");
  const Result unsat = cli("check " + fixture("response.ltlf") + " " + fixture("trace_unsat.txt"));
  EXPECT_EQ(unsat.code, 1);
  EXPECT_EQ(first_line(unsat.out), "UNSAT");
}

TEST(Cli, DfaOutputs) {
  const Result dot = cli("dfa " + fixture("eventually_y.ltlf") + " " + fixture("xy.part"));
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);
  const Result table = cli("dfa --table " + fixture("eventually_y.ltlf") + " " + fixture("xy.part"));
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(first_line(table.out), "states 2 initial 0");
  const Result raw = cli("dfa --table --no-minimize " + fixture("eventually_y.ltlf") + " " + fixture("xy.part"));
  EXPECT_EQ(raw.code, 0);
}

TEST(Cli, ReduceTrue) {
  const Result r = cli("reduce " + fixture("true.ltlf") + " " + fixture("xy.part"));
  ASSERT_EQ(r.code, 0);
  const Formula f = parse(first_line(r.out));
  EXPECT_EQ(atoms_of(f), (std::set<std::string>{"Tail"}));
  const Partition p = parse_partition(r.out.substr(r.out.find('\n') + 1));
  EXPECT_EQ(p.outputs(), (std::vector<std::string>{"y", "Tail"}));
}

TEST(Cli, BenchCsv) {
  TempDir tmp;
  const std::string csv = tmp.file("bench.csv");
  const Result r = cli("bench --L 2 --m 3 --seeds 2 --timeout-ms 5000 --out \"" + csv + "\"");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(read_file(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kBenchCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4u);
}

TEST(Cli, NodeCapEnvironment) {
  const std::string args = "synth " + fixture("response.ltlf") + " " + fixture("xy.part");
  EXPECT_EQ(cli(args, "SYFT_NODE_CAP=3").code, 2);
  EXPECT_EQ(cli(args, "SYFT_NODE_CAP=abc").code, 2);
  EXPECT_EQ(cli(args, "SYFT_NODE_CAP=100000").code, 0);
}
