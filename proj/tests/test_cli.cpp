#include "bz/cli.hpp"

#include <nlohmann/json.hpp>
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bz;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "bz");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(BZ_TEST_DATA) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
    auto p = std::filesystem::temp_directory_path() / ("bz_test_cli_" + name);
    std::ofstream(p) << contents;
    return p.string();
}

} // namespace

TEST(Cli, K1OnSteinbergSegment) {
    auto r = run({"k1", "--json", data("segment_len4.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = r.parsed();
    EXPECT_EQ(j["valuation"], 6);
    EXPECT_EQ(j["dimension_text"], "v^12");
}

TEST(Cli, DetmatReportsClosedForm) {
    auto r = run({"detmat", "--n", "3", "--d", "2"});
    ASSERT_EQ(r.code, kExitOk);
    auto j = r.parsed();
    EXPECT_EQ(j["det"], "4");
    // The determinant actually computed carries a factor (1 - u^{-1}).
    EXPECT_EQ(j["agrees"], false);
    EXPECT_EQ(run({"detmat", "--n", "3", "--d", "1", "--u", "1/3"}).parsed()["agrees"], true);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"detmat", "--n", "3"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate", "--seed", "1", "--oracle", "magic"}).code, kExitUsage);
}

TEST(Cli, DomainErrorsAreMachineReadable) {
    auto r = run({"k1", "--json", data("malformed.json")});
    EXPECT_EQ(r.code, kExitDomain);
    EXPECT_TRUE(r.parsed().contains("error"));
    auto missing = run({"sort", "--json", data("no_such_file.json")});
    EXPECT_EQ(missing.code, kExitDomain);
    EXPECT_TRUE(missing.parsed().contains("error"));
    EXPECT_EQ(run({"detmat", "--n", "2", "--d", "3"}).code, kExitDomain);
}

TEST(Cli, SortAndPoset) {
    auto s = run({"sort", "--json", data("two_points.json")});
    ASSERT_EQ(s.code, kExitOk);
    auto order = s.parsed()["order"];
    ASSERT_EQ(order.size(), 2u);
    EXPECT_EQ(order[0]["start2"], 2);

    auto p = run({"poset", "--json", data("two_points.json")});
    ASSERT_EQ(p.code, kExitOk);
    EXPECT_EQ(p.parsed()["nodes"].size(), 2u);
    EXPECT_EQ(p.parsed()["edges"].size(), 1u);
    EXPECT_EQ(run({"poset", "--json", data("two_points.json"), "--max-nodes", "1"}).code, kExitDomain);
}

TEST(Cli, Jacquet) {
    auto r = run({"jacquet", "--lengths", "2,1", "--j", "2", "--dtau", "1"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.parsed().is_array());
    EXPECT_EQ(run({"jacquet", "--lengths", "2,x", "--j", "1"}).code, kExitDomain);
}

TEST(Cli, EpsilonAndSimulate) {
    auto e = run({"epsilon", "--skeleton", data("skeleton_11.json"), "--exponents", data("exponents_11.json")});
    ASSERT_EQ(e.code, kExitOk) << e.out;
    EXPECT_EQ(e.parsed()["coeff_text"], "z1*z2");

    auto s = run({"simulate", "--skeleton", data("skeleton_11.json"), "--points", data("points_11.json"),
                  "--exponents", data("exponents_11.json")});
    ASSERT_EQ(s.code, kExitOk) << s.out;
    auto j = s.parsed();
    EXPECT_EQ(j["verification"], "PASS");
    EXPECT_EQ(j["rows"][1]["recovered"], "6");
    EXPECT_EQ(j["rows"][2]["recovered"], "-5/2");
}

TEST(Cli, EmittedTracesDriveDetect) {
    auto em = run({"simulate", "--skeleton", data("skeleton_11.json"), "--points", data("points_11.json"),
                   "--emit-traces", "x1"});
    ASSERT_EQ(em.code, kExitOk) << em.out;
    auto traces = temp_file("traces.json", em.out);
    auto e2 = run({"detect", "--skeleton", data("skeleton_11.json"), "--traces", traces, "--target", "e2"});
    ASSERT_EQ(e2.code, kExitOk) << e2.out;
    EXPECT_EQ(e2.parsed()["value_text"], "6");
    auto p1 = run({"detect", "--skeleton", data("skeleton_11.json"), "--traces", traces, "--target", "p1"});
    EXPECT_EQ(p1.parsed()["value_text"], "5");
}

TEST(Cli, OutputIsDeterministic) {
    for (const char* seed : {"3", "8"}) {
        auto a = run({"simulate", "--seed", seed});
        auto b = run({"simulate", "--seed", seed});
        EXPECT_EQ(a.code, kExitOk);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, EnumerationGuard) {
    auto over = run({"simulate", "--skeleton", data("skeleton_11.json"), "--oracle", "enum", "--max-n", "1"});
    EXPECT_EQ(over.code, kExitDomain);
    EXPECT_TRUE(over.parsed().contains("error"));
    EXPECT_EQ(run({"simulate", "--skeleton", data("skeleton_11.json"), "--oracle", "enum"}).code, kExitOk);

    ::setenv("BZ_MAX_N", "1", 1);
    auto env = run({"simulate", "--skeleton", data("skeleton_11.json"), "--oracle", "enum"});
    ::unsetenv("BZ_MAX_N");
    EXPECT_EQ(env.code, kExitDomain);
}
