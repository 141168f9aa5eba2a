#include "epoche/distortions.hpp"
#include "epoche/io.hpp"

#include <gtest/gtest.h>

using namespace epoche;

namespace {

ShadowElement S(const ContextPtr& ctx, const char* s) { return parse_shadow(ctx, s); }

}  // namespace

TEST(Projector, IdentityStarIsWeylStar) {
    auto ctx = Context::make(1, 3);
    auto P = ProjectorSpec::identity();
    for (auto [a, b] : {std::pair{"h[1]", "h[2]"}, {"h[2] h[1]", "h[1]"}, {"h[1,2]", "h[2] + h[1]"}})
        EXPECT_EQ(star_P(P, S(ctx, a), S(ctx, b)), star_weyl(S(ctx, a), S(ctx, b)));
}

TEST(Projector, BuiltinNeedsN2) {
    EXPECT_THROW(ProjectorSpec::builtin_n2(Context::make(1, 3)), ConfigError);
    EXPECT_NO_THROW(ProjectorSpec::builtin_n2(Context::make(1, 2)));
}

TEST(Projector, BuiltinFixesMonomialsWithAtMostOnePair) {
    auto ctx = Context::make(2, 2);
    auto P = ProjectorSpec::builtin_n2(ctx);
    for (auto s : {"h[1]", "h[2] h[1] h[1]", "h[1,3] h[4] h[2]", "3"})
        EXPECT_EQ(apply_projector(P, S(ctx, s)), S(ctx, s)) << s;
}

TEST(Projector, BuiltinTwoPairsAtOnes) {
    // b(id) = 1, b(swap) = -1 (three crossings), so c = (1/2, -1/2), and
    // h[1,4] h[3,2] = -h[1,4] h[2,3] at q = 1.
    auto ctx = Context::make(2, 2, Specialization{});
    auto P = ProjectorSpec::builtin_n2(ctx);
    auto expected = S(ctx, "1/2 h[3,4] h[1,2] + 1/2 h[2,3] h[1,4]");
    EXPECT_EQ(apply_projector(P, S(ctx, "h[1,2] h[3,4]")), expected);
    // a squared pair is killed
    EXPECT_TRUE(apply_projector(P, S(ctx, "h[1,2] h[1,2]")).is_zero());
}

TEST(Projector, BraidingFactor) {
    auto ctx = Context::make(2, 2);
    // xi1 xi4 xi3 xi2 = b * xi1 xi2 xi3 xi4: swaps (4,3), (4,2), (3,2)
    auto b = braiding_factor(*ctx, {1, 3}, {2, 4}, Permutation({1, 0}));
    auto expected = ctx->lift(Exponents::var(3, 4, 1) * Exponents::var(2, 4, 1) * Exponents::var(2, 3, 1));
    EXPECT_EQ(b, -expected);
    EXPECT_EQ(braiding_factor(*ctx, {1, 3}, {2, 4}, Permutation::identity(2)), RationalFunction(1));
}

TEST(Projector, TableFromJson) {
    auto ctx = Context::make(1, 2);
    auto j = nlohmann::json::parse(R"([{"key": ["1"], "value": [{"coeff_num": "2", "monomial": ["2"]}]}])");
    auto P = ProjectorSpec::from_json(ctx, j);
    EXPECT_EQ(apply_projector(P, S(ctx, "h[1] + h[2]")), S(ctx, "3 h[2]"));
}

TEST(TreeBracket, MatchesNestedBrackets) {
    auto ctx = Context::make(1, 3);
    auto P = ProjectorSpec::identity();
    auto a = S(ctx, "h[1]"), b = S(ctx, "h[2]"), c = S(ctx, "h[1]");
    auto two = Shape::node(Shape::leaf(), Shape::leaf());
    EXPECT_EQ(tree_bracket(two, P, {a, b}), bracket_P(P, a, b));
    auto left = Shape::node(two, Shape::leaf());
    EXPECT_EQ(tree_bracket(left, P, {a, b, c}), bracket_P(P, bracket_P(P, a, b), c));
    EXPECT_THROW(tree_bracket(left, P, {a, b}), std::invalid_argument);
}

TEST(TwistedProduct, ZeroTwistIsShadowProduct) {
    auto ctx = Context::make(1, 3);
    TwistSpec r;
    auto a = S(ctx, "h[1] + q[1,2] h[1,2]"), b = S(ctx, "h[2] h[1] - 2");
    EXPECT_EQ(star_R(r, a, b), a * b);
}

TEST(TwistedProduct, ConcatenationTwistOnGenerators) {
    auto ctx = Context::make(1, 3);
    TwistSpec r;
    r.set({LabelledTree(1)}, {LabelledTree(2)}, S(ctx, "h[1,2]"));
    EXPECT_EQ(star_R(r, S(ctx, "h[1]"), S(ctx, "h[2]")), S(ctx, "h[1] h[2] + h[1,2]"));
    EXPECT_EQ(star_R(r, S(ctx, "h[2]"), S(ctx, "h[1]")), S(ctx, "h[2] h[1]"));
    // bilinear
    auto a = S(ctx, "h[1] + 3 h[2]"), b = S(ctx, "q[1,2] h[2] + h[1]");
    EXPECT_EQ(star_R(r, a, b), star_R(r, S(ctx, "h[1]"), b) + star_R(r, S(ctx, "h[2]"), b).scaled(RationalFunction(3)));
}

TEST(TwistedProduct, FromNormalStarAtN2) {
    auto ctx = Context::make(1, 2);
    auto r = TwistSpec::from_normal_star(ctx);
    ASSERT_EQ(r.entries().size(), 1u);
    EXPECT_EQ(*r.find({LabelledTree(1)}, {LabelledTree(2)}), S(ctx, "h[1,2]"));
}

TEST(Qybe, ZeroTwistLeavesTheConcatenationTerm) {
    auto ctx = Context::make(1, 2);
    auto rep = qybe_residual(ctx, TwistSpec{}, LabelledTree(1), LabelledTree(2), {ShadowElement::unit(ctx)});
    EXPECT_EQ(rep.residuals[0], S(ctx, "-h[1,2]"));
}

TEST(Qybe, NormalStarTwistOnLeafPairs) {
    auto ctx = Context::make(1, 2);
    auto r = TwistSpec::from_normal_star(ctx);
    std::vector<ShadowElement> probes{ShadowElement::unit(ctx), S(ctx, "h[1]"), S(ctx, "h[2]")};
    for (int a : {1, 2})
        for (int b : {1, 2}) EXPECT_TRUE(qybe_residual(ctx, r, LabelledTree(a), LabelledTree(b), probes).all_zero());
    // the subset sum ignores the braiding of the extracted factor
    auto rep = qybe_residual(ctx, r, LabelledTree(1), LabelledTree(2), {S(ctx, "h[1,2]")});
    EXPECT_EQ(rep.residuals[0], S(ctx, "(q[1,2] - 1) * h[1,2] h[1,2]"));
    auto ones = Context::make(1, 2, Specialization{});
    auto rep1 = qybe_residual(ones, TwistSpec::from_normal_star(ones), LabelledTree(1), LabelledTree(2),
                              {S(ones, "h[1,2]")});
    EXPECT_TRUE(rep1.all_zero());
}
