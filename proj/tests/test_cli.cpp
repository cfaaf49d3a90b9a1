#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef SPECSUM_CLI_PATH
#error "SPECSUM_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(SPECSUM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(CliTest, ZetaLadderReportsMinusOneTwelfth) {
    CliResult r = run_cli("zeta --alpha 1");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    EXPECT_NEAR(rec["value"].get<double>(), -1.0 / 12.0, 1e-4);
    EXPECT_EQ(rec["target_exact"], "-1/12");
    EXPECT_EQ(rec["method"], "cesaro");
    EXPECT_TRUE(rec["converged"].get<bool>());
    ASSERT_EQ(rec["ladder"]["cutoffs"].size(), 3u);
    EXPECT_DOUBLE_EQ(rec["ladder"]["cutoffs"][2].get<double>(), 100000.0);
}

TEST(CliTest, ExactZetaAtNegativeEvenIntegers) {
    CliResult r = run_cli("zeta --neg-int 4");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(rec["value"].get<double>(), 0.0);
    EXPECT_EQ(rec["exact"], "0");

    r = run_cli("zeta --neg-int 1");
    nlohmann::json rec1 = nlohmann::json::parse(r.out);
    EXPECT_EQ(rec1["exact"], "-1/12");
}

TEST(CliTest, TorusCountingTableIsByteExact) {
    CliResult r = run_cli("spectrum --model torus --dim 2 --max 26 --format table");
    ASSERT_EQ(r.exit_code, 0);
    const std::string expected =
        "lambda  multiplicity  count\n"
        "0       1             1\n"
        "1       4             5\n"
        "2       4             9\n"
        "4       4             13\n"
        "5       8             21\n"
        "8       4             25\n"
        "9       4             29\n"
        "10      8             37\n"
        "13      8             45\n"
        "16      4             49\n"
        "17      8             57\n"
        "18      4             61\n"
        "20      8             69\n"
        "25      12            81\n"
        "26      8             89\n";
    EXPECT_EQ(r.out, expected);
}

TEST(CliTest, TabFormatRoundTripsThroughCount) {
    CliResult tab = run_cli("spectrum --model torus --dim 2 --max 26 --format tab");
    ASSERT_EQ(tab.exit_code, 0);
    std::string path = ::testing::TempDir() + "specsum_cli_t2.tab";
    {
        std::ofstream f(path);
        ASSERT_TRUE(f.good());
        f << tab.out;
    }
    CliResult r = run_cli("count --file " + path + " --lambda 2 --side right");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    EXPECT_EQ(rec["count"].get<long long>(), 9);
    std::remove(path.c_str());
}

TEST(CliTest, MulhollandCsvIsDeterministic) {
    const std::string cmd = "heat --compare mulholland --t 0.1 --format csv";
    CliResult a = run_cli(cmd);
    CliResult b = run_cli(cmd);
    CliResult c = run_cli(cmd + " --threads 3");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_EQ(a.out,
              "t,exact,expansion,error\n"
              "0.1,10.3401302801942,10.340126984127,3.29606716675812e-06\n");
}

TEST(CliTest, CsvQuotesEmbeddedCommas) {
    CliResult r = run_cli("revert --symbol 1,1/2 --j 1 --format csv");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out,
              "symbol,dim,j,exact,value\n"
              "\"1,1/2\",1,1,0,0\n");
}

TEST(CliTest, GrandiSettlesAtOneHalf) {
    CliResult r = run_cli("sum --series grandi --order 1 --cutoff 1000");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    EXPECT_NEAR(rec["value"].get<double>(), 0.5, 1e-12);
    EXPECT_TRUE(rec["converged"].get<bool>());
}

TEST(CliTest, ExitCodes) {
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("--bogus").exit_code, 2);
    EXPECT_EQ(run_cli("zeta --neg-int 4 --format tab").exit_code, 2);  // tab is spectrum-only
    EXPECT_EQ(run_cli("zeta --neg-int 4 --format bogus").exit_code, 2);
    // Cesaro order too low for an oscillating series: ladder never settles.
    EXPECT_EQ(run_cli("sum --series cos --order 1 --cutoff 4000 --tol 1e-9").exit_code, 3);
    // Heat-coefficient relation hits its even-dimensional pole.
    EXPECT_EQ(run_cli("revert --b2k --a2k 1 --dim 2 --k 1").exit_code, 1);
}

TEST(CliTest, MomentsTableCarriesExactRationals) {
    CliResult r = run_cli("moments --surface sphere2 --upto 3");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    ASSERT_EQ(rec["moments"].size(), 4u);
    EXPECT_EQ(rec["moments"][0]["exact"], "-2/3");
    EXPECT_EQ(rec["moments"][1]["exact"], "-1/15");
    EXPECT_EQ(rec["moments"][2]["exact"], "8/315");
    EXPECT_EQ(rec["moments"][3]["exact"], "-2/105");
}

TEST(CliTest, SphereExpansionRecordListsAllChannels) {
    CliResult r = run_cli("count --expansion sphere2");
    ASSERT_EQ(r.exit_code, 0);
    nlohmann::json rec = nlohmann::json::parse(r.out);
    ASSERT_EQ(rec["density_terms"].size(), 1u);
    EXPECT_EQ(rec["density_terms"][0]["coefficient"], "1");
    EXPECT_EQ(rec["density_terms"][0]["exponent"], "0");
    ASSERT_EQ(rec["moments"].size(), 4u);
    EXPECT_EQ(rec["moments"][0], "1/3");
    ASSERT_EQ(rec["delta_coefficients"].size(), 3u);
    EXPECT_EQ(rec["delta_coefficients"][2], "1/315");
}
