#include <gtest/gtest.h>

#include <sstream>

#include <av1324/cli.hpp>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = av1324::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, CountTotalsAndClasses) {
    EXPECT_EQ(run({"count", "--n", "4"}).out, "23\n");
    EXPECT_EQ(run({"count", "--n", "4", "--a", "1", "--k", "2"}).out, "4\n");
    EXPECT_EQ(run({"count", "--n", "7", "--a", "2", "--k", "3"}).out, "60\n");
    EXPECT_EQ(run({"count", "--n", "4", "--a", "3", "--k", "3"}).out, "0\n");
}

TEST(Cli, CountFormats) {
    EXPECT_EQ(run({"count", "--n", "3", "--format", "csv"}).out, "n,a,k,count\n3,1,1,2\n3,1,2,1\n3,2,1,1\n3,,,6\n");
    EXPECT_EQ(run({"count", "--n", "4", "--a", "1", "--k", "2", "--format", "json"}).out,
              "{\"n\":4,\"total\":\"23\",\"a\":1,\"k\":2,\"count\":\"4\"}\n");
}

TEST(Cli, Factor) {
    EXPECT_EQ(run({"factor", "1243"}).out, "12 ⊙ 132\n");
    EXPECT_EQ(run({"factor", "--perm", "1234"}).out, "12 ⊙ 12 ⊙ 12\n");
    EXPECT_EQ(run({"factor", "1342", "--format", "json"}).out,
              "{\"perm\":\"1,3,4,2\",\"k\":2,\"factors\":[\"1,3,2\",\"1,2\"]}\n");
    EXPECT_EQ(run({"factor", "21"}).code, 2);
}

TEST(Cli, Domino) {
    EXPECT_EQ(run({"domino", "--points", "2", "--count"}).out, "6\n");
    EXPECT_EQ(run({"domino", "--points", "5", "--count"}).out, "408\n");
    EXPECT_EQ(run({"domino", "--perm", "2143"}).out, "B:1|T:1|cols:bt\n");
    EXPECT_EQ(run({"domino", "--perm", "B:1|T:1|cols:bt"}).out, "2,1,4,3\n");
    const Result listing = run({"domino", "--points", "1"});
    EXPECT_EQ(listing.code, 0);
    EXPECT_EQ(std::count(listing.out.begin(), listing.out.end(), '\n'), 2);
}

TEST(Cli, Series) {
    EXPECT_EQ(run({"series", "--which", "f", "--order", "4"}).out, "1*x + 2*x^2 + 6*x^3 + 22*x^4\n");
    EXPECT_EQ(run({"series", "--which", "T", "--a", "2", "--k", "0", "--order", "4"}).out, "1*x^2\n");
    EXPECT_EQ(run({"series", "--which", "T", "--a", "3", "--k", "0", "--order", "4"}).out, "2*x^3\n");
    const Result g1 = run({"series", "--which", "g1", "--order", "3", "--max-k", "2"});
    EXPECT_EQ(g1.out, "n,k0,k1,k2\n0,0,0,0\n1,0,0,0\n2,0,1,0\n3,0,2,1\n");
    EXPECT_EQ(run({"series", "--which", "T", "--order", "4"}).code, 2);
}

TEST(Cli, VerifyPassesAndReportsPerIdentity) {
    const Result r = run({"verify", "--suite", "thm2", "--max-n", "9"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("PASS thm2_count"), std::string::npos);
    EXPECT_EQ(r.err.find("FAIL"), std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 4u);
    for (const auto& rep : j) EXPECT_TRUE(rep["pass"].get<bool>());

    EXPECT_EQ(run({"verify", "--suite", "prop1", "--max-n", "8"}).code, 0);
    EXPECT_EQ(run({"verify", "--suite", "conjecture", "--a", "3", "--max-n", "9", "--max-k", "5"}).code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"count"}).code, 2);
    EXPECT_EQ(run({"count", "--n", "4", "--a", "1"}).code, 2);
    EXPECT_EQ(run({"count", "--n", "4", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "thm1", "--max-n", "2"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"factor", "1,1"}).code, 2);
}

TEST(Cli, OutputIndependentOfThreadCount) {
    const Result one = run({"count", "--n", "9", "--format", "csv", "--threads", "1"});
    const Result four = run({"count", "--n", "9", "--format", "csv", "--threads", "4"});
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(one.code, 0);
}
