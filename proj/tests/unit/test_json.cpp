#include <gtest/gtest.h>

#include "ospk/json_io.hpp"

using namespace ospk;

TEST(Json, KSolutionRoundTrip) {
    for (const auto& k : catalog_solutions()) {
        auto j = to_json(k);
        auto back = ksolution_from_json(j);
        EXPECT_EQ(back.matrix, k.matrix) << j.dump();
        EXPECT_EQ(back.family, k.family);
        EXPECT_EQ(to_json(back), j);
    }
}

TEST(Json, NumericParametersBecomeExact) {
    auto k = ksolution_from_json(json::parse(R"({"algebra":"so:4","family":"D1","params":{"c":0.5}})"));
    EXPECT_EQ(k.params.at("c").value, GaussQ::frac(1, 2));
}

TEST(Json, FallbackAlgebraAndErrors) {
    auto s = parse_algebra("so:6");
    auto k = ksolution_from_json(json::parse(R"({"family":"D3","params":{"m1":1}})"), &s);
    EXPECT_EQ(k.params.at("c").value, GaussQ(2));
    EXPECT_THROW(ksolution_from_json(json::parse(R"({"family":"D3","params":{"m1":1}})")), std::exception);
    EXPECT_THROW(ksolution_from_json(json::parse(R"({"algebra":"so:5","family":"D1","params":{"c":"1/2"}})")),
                 BoundaryError);
}

TEST(Json, ReportSchemaIsStable) {
    auto r = verify_ybe(parse_algebra("so:3"));
    auto a = to_json(r), b = to_json(verify_ybe(parse_algebra("so:3")));
    for (const char* key : {"identity", "algebra", "status", "max_degree", "elapsed_ms"}) EXPECT_TRUE(a.contains(key)) << key;
    EXPECT_EQ(a["status"], "pass");
    EXPECT_FALSE(a.contains("witness"));
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    EXPECT_EQ(a.dump(), b.dump());
    auto f = to_json(verify_ybe(parse_algebra("so:3"), true));
    EXPECT_EQ(f["status"], "fail");
    EXPECT_TRUE(f.contains("witness"));
    EXPECT_STREQ(kReportSchema, "ospk.report/1");
}
