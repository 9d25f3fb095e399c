#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "", bool withStderr = false) {
    const std::string cmd = env + " " + WORDFN_CLI_PATH + " " + args + (withStderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    while (auto got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

} // namespace

TEST(Cli, ConstantsText) {
    auto r = run("constants --word a --format text");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "0.0972088746")) << r.out;
    EXPECT_TRUE(contains(r.out, "-0.0381264085")) << r.out;
}

TEST(Cli, ConstantsPrecisionFlagAndEnv) {
    auto j = nlohmann::json::parse(run("--format json constants --word ab --precision 20").out);
    EXPECT_EQ(j["precision"], 20);
    EXPECT_EQ(nlohmann::json::parse(run("constants --word ab --format json").out)["precision"], 60);
    auto env = run("constants --word ab --format json", "WORDFN_PRECISION=30");
    EXPECT_EQ(nlohmann::json::parse(env.out)["precision"], 30);
    EXPECT_EQ(run("constants --word ab", "WORDFN_PRECISION=3").status, 1);
}

TEST(Cli, ReconstructPrintsClass) {
    auto r = run("reconstruct --word aaabaa");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "candidates: aaabaa bbbabb")) << r.out;
}

TEST(Cli, OracleEnumCsv) {
    auto r = run("oracle-enum --word a --n 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "value,probability,numerator,denominator\n0,1/2,1,2\n1,1/2,1,2\n");
}

TEST(Cli, OracleTvIsPositive) {
    auto j = nlohmann::json::parse(run("--format json oracle-tv --word a --word2 aa --n 3").out);
    EXPECT_NE(j["tv"], "0");
}

TEST(Cli, SimulateIsByteIdentical) {
    const std::string args = "simulate --word aab --n 3000 --trials 40 --seed 9 --cycles 6";
    auto a = run("--threads 1 " + args), b = run("--threads 3 " + args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    for (auto key : {"word", "n", "trials", "seed", "leaf_mean", "leaf_var_over_n", "m_shift_mean", "cycle_means"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["cycle_means"].size(), 6u);
}

TEST(Cli, SimulateFromConfigFile) {
    const std::string path = ::testing::TempDir() + "wordfn_cfg.txt";
    std::ofstream(path) << "word = ab\nn = 400\ntrials = 10\nseed = 4\n";
    auto fromFile = run("simulate --config " + path);
    auto fromFlags = run("simulate --word ab --n 400 --trials 10 --seed 4");
    EXPECT_EQ(fromFile.status, 0);
    EXPECT_EQ(fromFile.out, fromFlags.out);
}

TEST(Cli, SweepWritesCsv) {
    const std::string path = ::testing::TempDir() + "wordfn_sweep.csv";
    auto r = run("--format json sweep --max-len 4 --out " + path);
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["words"], 15);
    EXPECT_EQ(j["distinct_c"], 15);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "word,length,c,c_tilde");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 15);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("constants").status, 1);
    EXPECT_EQ(run("constants --word abc").status, 1);
    EXPECT_EQ(run("simulate --word ab --n lots --trials 3").status, 1);
    EXPECT_EQ(run("oracle-enum --word a --n 6").status, 2);
    EXPECT_EQ(run("table --max-len 2").status, 0);
    EXPECT_EQ(run("selftest").status, 0);
}

TEST(Cli, NumericParseFailureIsNamed) {
    auto r = run("simulate --word ab --n lots --trials 3", "", true);
    EXPECT_TRUE(contains(r.out, "--n")) << r.out;
}
