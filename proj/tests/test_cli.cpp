#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ZXG_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("zxg_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, OptimizeThenCheckEquiv) {
    ASSERT_EQ(run("gen --kind clifford --qubits 3 --gates 15 --seed 4 -o " + path("c.txt")).code, 0);
    const auto opt = run("optimize " + path("c.txt") + " --verify -o " + path("o.txt"));
    EXPECT_EQ(opt.code, 0);
    EXPECT_EQ(run("check-equiv " + path("c.txt") + " " + path("o.txt")).code, 0);
}

TEST_F(Cli, OptimizeIsDeterministic) {
    ASSERT_EQ(run("gen --kind parity --bits 4 --gates 40 --seed 9 -o " + path("p.txt")).code, 0);
    const auto a = run("optimize " + path("p.txt"));
    const auto b = run("optimize " + path("p.txt"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(run("--json optimize " + path("p.txt")).out);
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_TRUE(j["info"].contains("ground_count_after"));
    EXPECT_EQ(j["info"]["classical_gates"], j["info"]["gates_after"]);
}

TEST_F(Cli, InequivalentCircuitsExitOne) {
    write("a.txt", "qubits 1\nh q0\n");
    write("b.txt", "qubits 1\nrz 1/2 q0\n");
    EXPECT_EQ(run("check-equiv " + path("a.txt") + " " + path("b.txt")).code, 1);
    EXPECT_EQ(run("check-equiv " + path("a.txt") + " " + path("a.txt")).code, 0);
}

TEST_F(Cli, ToleranceFromEnvironment) {
    write("a.txt", "qubits 1\nrz 1/4 q0\n");
    EXPECT_EQ(run("check-equiv " + path("a.txt") + " " + path("a.txt")).code, 0);
    EXPECT_EQ(std::system(("ZXG_TOLERANCE=-1 " + std::string(ZXG_CLI) + " check-equiv " + path("a.txt") + " " +
                           path("a.txt") + " 2>/dev/null >/dev/null")
                              .c_str()) >>
                  8,
              2);
}

TEST_F(Cli, UsageAndParseErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("optimize " + path("missing.txt")).code, 2);
    write("bad.txt", "qubits 1\nh q7\n");
    const auto r = run("--json translate " + path("bad.txt"));
    EXPECT_EQ(r.code, 2);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["ok"].get<bool>());
    EXPECT_EQ(j["error"]["exit_code"], 2);
}

TEST_F(Cli, StagesCompose) {
    ASSERT_EQ(run("gen --kind clifford --qubits 2 --gates 12 --seed 1 -o " + path("c.txt")).code, 0);
    ASSERT_EQ(run("translate " + path("c.txt") + " -o " + path("d.json")).code, 0);
    ASSERT_EQ(run("simplify " + path("d.json") + " -o " + path("s.json")).code, 0);
    ASSERT_EQ(run("gflow " + path("s.json")).code, 0);
    ASSERT_EQ(run("extract " + path("s.json") + " -o " + path("e.txt")).code, 0);
    EXPECT_EQ(run("check-equiv " + path("c.txt") + " " + path("e.txt")).code, 0);
    EXPECT_EQ(run("check-equiv " + path("c.txt") + " " + path("s.json")).code, 0);
    const auto sim = nlohmann::json::parse(run("simulate " + path("c.txt")).out);
    EXPECT_EQ(sim["n_in"], 2);
    EXPECT_EQ(run("classicalize --validate " + path("e.txt")).code, 0);
}

TEST_F(Cli, BenchCsvIsReproducible) {
    const auto a = run("bench --mode parity --bits 4 --gate-counts 10,20 --seeds 3");
    const auto b = run("bench --mode parity --bits 4 --gate-counts 10,20 --seeds 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "seed,n_gates,spiders_naive,spiders_ours,grounds_ours");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 7);
}
