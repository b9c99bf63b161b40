#include <gtest/gtest.h>

#include "mordell/cli/commands.hpp"

using namespace mordell;
using namespace mordell::cli;

namespace {

template <class Fn>
int exit_code_of(Fn&& fn) {
    try {
        fn();
    } catch (std::exception const& e) {
        return exit_code_for(e);
    }
    return kOk;
}

void expect_round_trip(Envelope const& env) {
    auto const text = env.dump();
    auto const back = Envelope::from_json(json::parse(text));
    EXPECT_EQ(back, env);
    EXPECT_EQ(back.dump(), text);
}

}  // namespace

TEST(Cli, CurveInfoExamples) {
    auto env = cmd_curve_info(parse_curve("-1,0"));
    EXPECT_EQ(env.result["invariants"]["delta"], "64");
    EXPECT_EQ(env.result["singular"], false);
    expect_round_trip(env);

    auto singular = cmd_curve_info(parse_curve("0,0"));
    EXPECT_EQ(singular.result["invariants"]["delta"], "0");
    EXPECT_EQ(singular.result["singular"], true);

    auto general = cmd_curve_info(parse_curve("1,0,1,0,0"));
    EXPECT_EQ(general.result["invariants"]["b2"], "1");
    EXPECT_EQ(general.result["invariants"]["b4"], "1");
    EXPECT_EQ(general.result["invariants"]["b6"], "1");
    EXPECT_EQ(general.result["invariants"]["delta"], "-26");
    EXPECT_EQ(general.inputs["curve"]["a1"], "1");
    expect_round_trip(general);
}

TEST(Cli, PointExamples) {
    auto c = parse_curve("0,1");
    EXPECT_EQ(cmd_point(c, "add", {"2,3", "0,1"}).result["point"], json::array({"-1", "0"}));
    EXPECT_EQ(cmd_point(c, "mul", {"6", "2,3"}).result["point"], "O");
    EXPECT_EQ(cmd_point(c, "neg", {"O"}).result["point"], "O");
    EXPECT_EQ(point_from_json(cmd_point(parse_curve("0,-2"), "double", {"3,5"}).result["point"]),
              Point::affine(make_rational(129, 100), make_rational(-383, 1000)));
    EXPECT_EQ(exit_code_of([&] { cmd_point(c, "add", {"2,4", "0,1"}); }), kPoint);
    EXPECT_EQ(exit_code_of([&] { cmd_point(c, "twist", {"2,3"}); }), kParse);
    EXPECT_EQ(exit_code_of([&] { cmd_point(c, "add", {"2,3"}); }), kParse);
}

TEST(Cli, SearchExamples) {
    auto env = cmd_search(parse_curve("-1,0"), 0.0);
    EXPECT_EQ(env.result["count"], 4);
    auto mordell = cmd_search(parse_curve("0,1"), std::log(2.0));
    EXPECT_EQ(mordell.result["count"], 6);
    EXPECT_EQ(mordell.result["points"][5]["point"], json::array({"2", "3"}));
    EXPECT_EQ(mordell.result["points"][5]["H"], "2");
    expect_round_trip(mordell);
    EXPECT_EQ(exit_code_of([] { cmd_search(parse_curve("1/2,1"), 1.0); }), kModel);
    EXPECT_EQ(exit_code_of([] { cmd_search(parse_curve("0,-1,1,0,0"), 1.0); }), kModel);
}

TEST(Cli, DescendExamples) {
    auto env = cmd_descend(parse_curve("-1,0"), Point::affine(0, 0), std::nullopt);
    EXPECT_EQ(env.exact, false);
    EXPECT_EQ(env.result["reconstruction_exact"], true);
    EXPECT_EQ(env.result["final_within_threshold"], true);
    EXPECT_LE(env.result["steps"].size(), 2u);

    auto zero = cmd_descend(parse_curve("-1,0"), Point::infinity(), std::nullopt);
    EXPECT_TRUE(zero.result["steps"].empty());
    EXPECT_EQ(zero.result["final"], "O");

    auto fixed = cmd_descend(parse_curve("-25,0"), Point::affine(-4, 6), std::pair{10.0, 10.0});
    EXPECT_EQ(fixed.result["threshold"], 11.0);
    EXPECT_EQ(fixed.result["audit_holds"], true);
    expect_round_trip(fixed);

    EXPECT_EQ(exit_code_of([] { cmd_descend(parse_curve("0,1"), Point::affine(2, 3), std::nullopt); }), kModel);
    EXPECT_EQ(exit_code_of([] { cmd_descend(parse_curve("-1,0"), Point::affine(2, 3), std::nullopt); }), kPoint);
}

TEST(Cli, DescendWithTinyConstantsReportsDescentError) {
    // Zero constants give threshold 1, below every non-torsion height on y^2 = x^3 - 25x.
    auto const c = parse_curve("-25,0");
    int const code = exit_code_of([&] {
        auto const g = c.curve;
        Point const p = mul(g, 9L, Point::affine(-4, 6));
        cmd_descend(c, p, std::pair{0.0, 0.0});
    });
    EXPECT_EQ(code, kDescent);
}

TEST(Cli, RankTorsionVerify) {
    auto rank = cmd_rank_bounds(parse_curve("-1,0"));
    EXPECT_EQ(rank.result["lower"], 0);
    EXPECT_EQ(rank.result["upper"], 2);
    auto torsion = cmd_torsion(parse_curve("0,1"));
    EXPECT_EQ(torsion.result["structure"], "Z/6");
    auto verify = cmd_verify(parse_curve("0,1"));
    EXPECT_EQ(verify.result["all_pass"], true);
    EXPECT_EQ(verify.result["duplication_identities"], true);
    EXPECT_EQ(verify.result["quotient_identity"], true);
    expect_round_trip(verify);
    EXPECT_EQ(exit_code_of([] { cmd_rank_bounds(parse_curve("0,1")); }), kModel);
}

TEST(Cli, ErrorEnvelope) {
    ParseError const err("bad input");
    auto env = error_envelope("search", {{"curve", "x"}}, err);
    EXPECT_EQ(env.result["error"]["kind"], "ParseError");
    EXPECT_EQ(env.result["error"]["exit_code"], kParse);
    expect_round_trip(env);
    EXPECT_THROW(Envelope::from_json(json::parse(R"({"command": "x"})")), ParseError);
}

TEST(Cli, OutputIsDeterministic) {
    for (auto const* text : {"0,1", "-1,0", "0,-2", "0,4"}) {
        auto const c = parse_curve(text);
        EXPECT_EQ(cmd_search(c, std::log(50.0)).dump(), cmd_search(c, std::log(50.0), 3).dump());
        EXPECT_EQ(cmd_torsion(c).dump(), cmd_torsion(c).dump());
        EXPECT_EQ(cmd_verify(c).dump(), cmd_verify(c).dump());
    }
}

TEST(Cli, TextRendering) {
    auto text = render_text(cmd_point(parse_curve("0,1"), "add", {"2,3", "0,1"}));
    EXPECT_NE(text.find("result.point = [\"-1\",\"0\"]"), std::string::npos);
}
