#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "commsim/tree_io.hpp"

using namespace commsim;

namespace {

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"commsim"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli((int)argv.size(), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

struct CaptureOut {
    std::ostringstream buffer;
    std::streambuf* old;
    CaptureOut() : old(std::cout.rdbuf(buffer.rdbuf())) {}
    ~CaptureOut() { std::cout.rdbuf(old); }
};

}  // namespace

TEST_CASE("missing required flag exits 2") {
    CHECK(cli({"noisytree", "--workload", "hd1-bsearch"}) == 2);
    CHECK(cli({"no-such-command"}) == 2);
    CHECK(cli({}) == 2);
}

TEST_CASE("bad option values exit 2") {
    CHECK(cli({"noisytree", "--n", "16", "--mode", "sideways"}) == 2);
    CHECK(cli({"noisytree", "--n", "16", "--workload", "unknown", "--trials", "5"}) == 2);
}

TEST_CASE("noisytree subcommand writes a deterministic report") {
    TempFile out1("noisy1.csv"), out2("noisy2.csv");
    CHECK(cli({"noisytree", "--workload", "hd1-bsearch", "--n", "16", "--delta", "0.25",
               "--trials", "50", "--seed", "7", "--out", out1.path.c_str()}) == 0);
    CHECK(cli({"noisytree", "--workload", "hd1-bsearch", "--n", "16", "--delta", "0.25",
               "--trials", "50", "--seed", "7", "--threads", "1", "--out",
               out2.path.c_str()}) == 0);
    CHECK(slurp(out1.path) == slurp(out2.path));
    CHECK(slurp(out1.path).rfind("schema,", 0) == 0);
}

TEST_CASE("compare subcommand emits csv with both totals") {
    TempFile out("compare.csv");
    CHECK(cli({"compare", "--workload", "hd1-tensor", "--n", "16", "--k", "2", "--delta", "0.25",
               "--trials", "4", "--seed", "7", "--out", out.path.c_str()}) == 0);
    std::string text = slurp(out.path);
    CHECK(text.find("naive_formula_bits") != std::string::npos);
    CHECK(text.find("crossover_k") != std::string::npos);
}

TEST_CASE("hdreduce subcommand runs and can dump a trace") {
    TempFile out("hdr.json"), trace("hdr_trace.jsonl");
    CHECK(cli({"hdreduce", "--n", "64", "--k", "4", "--schedule", "t5", "--mode", "oracle",
               "--trials", "60", "--seed", "3", "--format", "json", "--out", out.path.c_str(),
               "--trace", trace.path.c_str()}) == 0);
    CHECK(slurp(out.path).find("commsim.report.v1") != std::string::npos);
    CHECK(slurp(trace.path).find("\"outcome\"") != std::string::npos);
}

TEST_CASE("blocky prints verdict and witness") {
    TempFile grid("grid.txt");
    {
        std::ofstream f(grid.path);
        f << "100\n010\n001\n";
    }
    CaptureOut cap;
    CHECK(cli({"blocky", "--in", grid.path.c_str()}) == 0);
    CHECK(cap.buffer.str().find("blocky: yes") != std::string::npos);
    CHECK(cap.buffer.str().find("row-labels:") != std::string::npos);
}

TEST_CASE("blocky rejects a non-Equality grid") {
    TempFile grid("grid2.txt");
    {
        std::ofstream f(grid.path);
        f << "11\n10\n";
    }
    CaptureOut cap;
    CHECK(cli({"blocky", "--in", grid.path.c_str()}) == 0);
    CHECK(cap.buffer.str().find("blocky: no") != std::string::npos);
}

TEST_CASE("vc and embed subcommands") {
    TempFile grid("grid3.txt");
    {
        std::ofstream f(grid.path);
        f << "1000\n0100\n0010\n0001\n";
    }
    {
        CaptureOut cap;
        CHECK(cli({"vc", "--in", grid.path.c_str()}) == 0);
        CHECK(cap.buffer.str() == "vc-dimension: 1\n");
    }
    {
        CaptureOut cap;
        CHECK(cli({"embed", "--in", grid.path.c_str()}) == 0);
        CHECK(cap.buffer.str().find("embed-verified: yes") != std::string::npos);
    }
    CHECK(cli({"vc", "--in", "does_not_exist.txt"}) == 2);
}

TEST_CASE("subproto subcommand reports accept rates") {
    TempFile out("sub.json");
    CHECK(cli({"subproto", "--proto", "hd1-once", "--n", "32", "--dist", "1", "--trials", "200",
               "--seed", "9", "--format", "json", "--out", out.path.c_str()}) == 0);
    std::string text = slurp(out.path);
    CHECK(text.find("\"accepts\": 200") != std::string::npos);
}

TEST_CASE("per-run stats cover vertex-domain workloads") {
    TempFile out("adj.csv"), runs("adj_runs.csv");
    CHECK(cli({"noisytree", "--workload", "adj-tree", "--n", "12", "--delta", "0.25", "--trials",
               "40", "--seed", "5", "--out", out.path.c_str(), "--per-run",
               runs.path.c_str()}) == 0);
    std::string text = slurp(runs.path);
    CHECK(text.rfind("seed,d,delta,C,R,bits,good,bad,mistakes,correct", 0) == 0);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 41);  // header + 40 sampled runs
}

TEST_CASE("dump-tree output parses back") {
    TempFile out("tree.txt");
    CHECK(cli({"dump-tree", "--workload", "gt", "--n", "8", "--out", out.path.c_str()}) == 0);
    ProtocolTree t = parse_tree(slurp(out.path));
    CHECK(t.depth() <= 5);
}
