#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

using namespace mibound;

TEST(JointJson, ParsesSchemaAndHonorsPolicy) {
    const JointDist j =
        parse_joint_json(R"({"pxy": [[0.017, 0.285], [0.424, 0.274]]})", ValidationPolicy::Strict);
    EXPECT_EQ(j.my, 2);
    EXPECT_DOUBLE_EQ(j.at(1, 0), 0.424);

    const std::string ex3 =
        R"({"pxy": [[0.101,0.062,0.025,0.088,0.005,0.007,0.069,0.059,0.080,0.074],
                    [0.103,0.006,0.038,0.002,0.018,0.079,0.049,0.032,0.020,0.020]]})";
    EXPECT_THROW(parse_joint_json(ex3, ValidationPolicy::Strict), MassMismatchError);
    EXPECT_NO_THROW(parse_joint_json(ex3, ValidationPolicy::Renormalize));
}

TEST(JointJson, RejectsMalformedDocuments) {
    EXPECT_THROW(parse_joint_json("not json", ValidationPolicy::Strict), ParseError);
    EXPECT_THROW(parse_joint_json(R"({"q": [[1.0],[0.0]]})", ValidationPolicy::Strict), ParseError);
    EXPECT_THROW(parse_joint_json(R"({"pxy": [[0.5,0.5]]})", ValidationPolicy::Strict), ParseError);
    EXPECT_THROW(parse_joint_json(R"({"pxy": [[0.5,0.5],[0.5]]})", ValidationPolicy::Strict),
                 ParseError);
    EXPECT_THROW(parse_joint_json(R"({"pxy": [[0.5,"x"],[0.25,0.25]]})", ValidationPolicy::Strict),
                 ParseError);
    EXPECT_THROW(parse_joint_json(R"({"pxy": [[],[]]})", ValidationPolicy::Strict), ParseError);
}

TEST(JointJson, RoundTrip) {
    const JointDist j = testutil::example2();
    const std::string text = joint_to_json(j).dump();
    const JointDist back = parse_joint_json(text, ValidationPolicy::Strict);
    EXPECT_EQ(back.v, j.v);
}

TEST(CountsParse, AcceptsTwoLineFormat) {
    std::istringstream in("17 285\n424 274\n");
    const CountsTable t = parse_counts(in);
    EXPECT_EQ(t.n, 1000);
    EXPECT_EQ(t.at(0, 1), 285);
    EXPECT_EQ(t.at(1, 0), 424);

    std::istringstream tabs("1\t2\t3\n4 5 6\n\n");
    const CountsTable t2 = parse_counts(tabs);
    EXPECT_EQ(t2.my, 3);
    EXPECT_EQ(t2.n, 21);
}

TEST(CountsParse, RejectsMalformedTables) {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_counts(in);
    };
    EXPECT_THROW(parse("1 2 3\n"), ParseError);
    EXPECT_THROW(parse("1 2\n3 4\n5 6\n"), ParseError);
    EXPECT_THROW(parse("1 2\n3\n"), ParseError);
    EXPECT_THROW(parse("1 x\n3 4\n"), ParseError);
    EXPECT_THROW(parse("1 2.5\n3 4\n"), ParseError);
    EXPECT_THROW(parse("1 -2\n3 4\n"), NegativeEntryError);
    EXPECT_THROW(parse("0 0\n0 0\n"), ZeroTotalError);
}

TEST(CurveCsv, FormatAndPrecision) {
    const JointDist p = testutil::example1();
    const BoundReport rep = lower_bound(p, 0.3, 5, SolverConfig{});
    std::ostringstream out;
    write_curve_csv(out, rep.curve);
    std::istringstream in(out.str());
    std::string line;
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line, "gamma,I_bits,I_nats,gap_nats,status");
    int rows = 0;
    double prev_gamma = -10.0;
    while (std::getline(in, line)) {
        double gamma = 0.0, ibits = 0.0, inats = 0.0, gap = 0.0;
        char status[32] = {0};
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%31s", &gamma, &ibits, &inats, &gap,
                              status),
                  5);
        EXPECT_GT(gamma, prev_gamma);
        prev_gamma = gamma;
        EXPECT_STREQ(status, "converged");
        // 12 significant digits survive the round trip at parser precision.
        EXPECT_NEAR(inats, ibits * kLn2, 1e-9 * std::max(1.0, std::abs(inats)));
        ++rows;
    }
    EXPECT_EQ(rows, 5);
    // Values match the report at 12 significant digits.
    EXPECT_NE(out.str().find(format_sig(rep.curve[0].value.bits())), std::string::npos);
}

TEST(FormatSig, TwelveSignificantDigits) {
    EXPECT_EQ(format_sig(0.15), "0.15");
    EXPECT_EQ(format_sig(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_sig(-0.05), "-0.05");
    EXPECT_EQ(format_sig(0.0), "0");
}
