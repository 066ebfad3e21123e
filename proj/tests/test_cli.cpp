#include <gtest/gtest.h>

#include <orddom/cli.hpp>

#include <sstream>

namespace {

using orddom::record::json;

struct Run {
    int code;
    std::string out;
    std::string err;

    std::vector<json> records() const
    {
        std::vector<json> v;
        std::istringstream in(out);
        std::string line;
        while (std::getline(in, line))
            v.push_back(json::parse(line));
        return v;
    }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = orddom::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, SearchTwoThree)
{
    auto r = run({"dominance", "search", "--pair", "2,3", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto recs = r.records();
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0]["kind"], "dominance");
    EXPECT_EQ(recs[0]["p"], "13");
    EXPECT_EQ(recs[0]["ord_a"], "12");
    EXPECT_EQ(recs[0]["ord_b"], "3");
    EXPECT_EQ(recs[0]["schema_version"], 1);
}

TEST(Cli, SurveyList)
{
    auto r = run({"antielite", "survey", "150", "--list"});
    ASSERT_EQ(r.code, 0);
    auto recs = r.records();
    ASSERT_EQ(recs.size(), 42u);
    EXPECT_EQ(recs.front()["A"], "1");
    EXPECT_EQ(recs.back()["A"], "144");
}

TEST(Cli, AntiEliteSecondArgumentIsInconclusive)
{
    auto r = run({"dominance", "search", "--pair", "9,2", "--construction", "auto", "--count", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("9 is anti-elite"), std::string::npos);
}

TEST(Cli, LemmaRouteForNonAntiElite)
{
    auto r = run({"dominance", "search", "--pair", "10,2", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto recs = r.records();
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_TRUE(orddom::record::verify(recs[0]) == std::nullopt);
}

TEST(Cli, ExplicitConstructions)
{
    auto r = run({"dominance", "search", "--pair=-2,17", "--construction", "t1iv", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.records()[0]["p"], "47");
    EXPECT_EQ(r.records()[0]["construction"], "t1iv");

    r = run({"dominance", "search", "--pair", "3,2", "--construction", "t1iii", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.records()[0]["p"], "17");

    r = run({"dominance", "search", "--pair", "2,6", "--construction", "custom:1,1,1", "--count", "1"});
    EXPECT_NE(r.code, 2) << r.err;

    r = run({"dominance", "search", "--pair", "2,3", "--construction", "t1ia"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, InvalidInput)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"dominance", "search"}).code, 2);
    EXPECT_EQ(run({"dominance", "search", "--pair", "2"}).code, 2);
    EXPECT_EQ(run({"dominance", "search", "--pair", "x,3"}).code, 2);
    EXPECT_EQ(run({"dominance", "scan", "--pair", "17,2", "--bound", "100", "--predicate", "lt"}).code, 2);
    EXPECT_EQ(run({"dominance", "scan", "--pair", "17,2", "--bound", "-5"}).code, 2);
    EXPECT_EQ(run({"quad", "equal", "--d", "-1", "--alpha", "1,1", "--beta", "2,1"}).code, 2);
    EXPECT_EQ(run({"quad", "equal", "--d", "-4", "--alpha", "1,1", "--beta", "2,1", "--scan", "--bound", "9"}).code, 2);
    EXPECT_EQ(run({"--json", "--csv", "antielite", "classify", "3"}).code, 2);
    auto r = run({"dominance", "search", "--pair", "2,3", "--no-such-flag"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, ScanIncludesSummaryAndIsDeterministic)
{
    std::vector<std::string> args{"dominance", "scan", "--pair", "17,2", "--bound", "200", "--predicate", "gt"};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto recs = a.records();
    ASSERT_FALSE(recs.empty());
    EXPECT_EQ(recs.back()["kind"], "scan_summary");
    bool has73 = false;
    for (const auto& j : recs)
        has73 |= j["kind"] == "dominance" && j["p"] == "73";
    EXPECT_TRUE(has73);
}

TEST(Cli, RatioPredicate)
{
    auto r = run({"dominance", "scan", "--pair", "2,3", "--bound", "1000", "--predicate", "ratio:4"});
    ASSERT_EQ(r.code, 0);
    for (const auto& j : r.records()) {
        if (j["kind"] != "dominance")
            continue;
        auto oa = std::stoull(j["ord_a"].get<std::string>()), ob = std::stoull(j["ord_b"].get<std::string>());
        EXPECT_EQ(oa % ob, 0u);
        EXPECT_EQ((oa / ob) % 4, 0u);
    }
}

TEST(Cli, CubicEmitsBothPairs)
{
    auto r = run({"cubic", "witness", "--a", "7", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto recs = r.records();
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0]["pair"][1], "-3");
    EXPECT_EQ(recs[1]["pair"][1], "3");
    EXPECT_EQ(recs[0]["p"], "67");
    EXPECT_EQ(run({"cubic", "witness", "--a", "10"}).code, 2);
}

TEST(Cli, QuadConstructAndScan)
{
    auto r = run({"quad", "equal", "--d", "-1", "--alpha", "1,1", "--beta", "2,1", "--construct"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto w = r.records().at(0);
    EXPECT_EQ(w["ell"], "3");
    EXPECT_EQ(w["P"]["norm"], "53");
    EXPECT_EQ(w["ord_a"], "52");
    EXPECT_EQ(w["field"]["omega"], "sqrt(-1)");

    r = run({"quad", "equal", "--d", "-1", "--alpha", "1,1", "--beta", "2,1", "--scan", "--bound", "100"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find(R"("P":{"p":"13","kind":"split","root":"5","norm":"13"},"ord_a":"12")"), std::string::npos);
}

TEST(Cli, ClassifyRecord)
{
    auto r = run({"antielite", "classify", "3", "--symbols"});
    ASSERT_EQ(r.code, 0);
    auto j = r.records().at(0);
    EXPECT_EQ(j["verdict"], false);
    EXPECT_EQ(j["refuting_n"], "2");
    EXPECT_TRUE(j.contains("symbols"));
    j = run({"antielite", "classify", "9"}).records().at(0);
    EXPECT_EQ(j["verdict"], true);
    EXPECT_TRUE(j["refuting_n"].is_null());
}

TEST(Cli, CsvOutput)
{
    auto r = run({"--csv", "dominance", "search", "--pair", "2,3", "--count", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "schema_version,kind,pair,construction,n,p,ord_a,ord_b\n"
                     "1,dominance,2;3,t1ii,2,13,12,3\n"
                     "1,dominance,2;3,t1ii,4,61,60,10\n");
}

TEST(Cli, VerifyFlagAndTamperedRecords)
{
    auto r = run({"--verify", "dominance", "search", "--pair", "5,7", "--count", "3"});
    EXPECT_EQ(r.code, 0) << r.err;

    for (const auto& rec : r.records()) {
        json bad = rec;
        bad["ord_b"] = "0";
        EXPECT_TRUE(orddom::record::verify(bad).has_value());
        bad = rec;
        bad["construction"] = "t1ii";
        bad["ord_a"] = rec["ord_b"];
        EXPECT_TRUE(orddom::record::verify(bad).has_value());
    }

    auto c = run({"--verify", "cubic", "witness", "--a", "4", "--count", "1"});
    EXPECT_EQ(c.code, 0) << c.err;
    auto q = run({"--verify", "quad", "equal", "--d", "-2", "--alpha", "1,1", "--beta", "3,1", "--construct"});
    EXPECT_NE(q.code, 2) << q.err;
    if (q.code == 0) {
        EXPECT_FALSE(q.out.empty());
    }
}

TEST(Cli, RecordsRoundTrip)
{
    auto r = run({"antielite", "witness", "3", "--n-hi", "5"});
    ASSERT_EQ(r.code, 0);
    for (const auto& j : r.records())
        EXPECT_EQ(json::parse(j.dump()), j);
}

} // namespace
