#include "epoche/io.hpp"
#include "epoche/quantize.hpp"

#include <gtest/gtest.h>

using namespace epoche;

namespace {

ShadowElement S(const ContextPtr& ctx, const std::string& s) { return parse_shadow(ctx, s); }
EnvelopeElement E(const ContextPtr& ctx, const std::string& s) { return parse_envelope(ctx, s); }

// q/(1+q^2) for q = q[2,1], written out.
const char* kWeylCorr = "(q[1,2])/(q[1,2]^2 + 1)";

}  // namespace

TEST(NormalQuantization, IdentityOnBasisMonomials) {
    auto ctx = Context::make(1, 3);
    auto a = S(ctx, "h[2] h[1] + 3 h[1,2] - 1");
    auto x = normal_Q(a);
    EXPECT_EQ(x.terms(), a.terms());
    EXPECT_EQ(dequantize_normal(x), a);
}

TEST(NormalStar, GeneratorsPickUpTheConcatenation) {
    auto ctx = Context::make(1, 3);
    EXPECT_EQ(star_normal(S(ctx, "h[1]"), S(ctx, "h[2]")), S(ctx, "q[2,1] h[2] h[1] + h[1,2]"));
    EXPECT_EQ(star_normal(S(ctx, "h[2]"), S(ctx, "h[1]")), S(ctx, "h[2] h[1]"));
}

TEST(NormalStar, ClosedFormulaOnSingleGenerators) {
    auto ctx = Context::make(1, 3);
    for (auto [a, b] : {std::pair{"h[1]", "h[2]"}, {"h[2]", "h[1]"}, {"h[1]", "h[1,2]"}, {"h[1,2]", "h[2]"}})
        EXPECT_EQ(star_normal_closed(S(ctx, a), S(ctx, b)), star_normal(S(ctx, a), S(ctx, b))) << a << " " << b;
    auto one = Context::make(1, 1);
    EXPECT_EQ(star_normal_closed(S(one, "h[1]"), S(one, "h[2]")), S(one, "h[1]") * S(one, "h[2]"));
}

TEST(NormalStar, ClosedFormulaCountsRepeatedGeneratorsTwice) {
    // both orders of two equal factors survive the non-increasing filter
    auto ctx = Context::make(1, 3);
    EXPECT_EQ(star_normal(S(ctx, "h[1]"), S(ctx, "h[1]")), S(ctx, "h[1] h[1]"));
    EXPECT_EQ(star_normal_closed(S(ctx, "h[1]"), S(ctx, "h[1]")), S(ctx, "2 h[1] h[1]"));
}

TEST(NormalBracket, GeneratorValues) {
    auto ctx = Context::make(2, 3);
    auto gens = enumerate_positive(2, 2);
    for (const auto& g : gens)
        for (const auto& gp : gens) {
            if (!(g < gp)) continue;
            auto b = bracket_normal(generator<AlgebraKind::Shadow>(ctx, g), generator<AlgebraKind::Shadow>(ctx, gp));
            EXPECT_EQ(b, generator<AlgebraKind::Shadow>(ctx, LabelledTree::node(g, gp)));
        }
    auto h1 = S(ctx, "h[1]");
    EXPECT_TRUE(bracket_normal(h1, h1).is_zero());
    EXPECT_TRUE(bracket_normal(h1, ShadowElement::unit(ctx)).is_zero());
}

TEST(Weyl, TwoFactorQuantization) {
    auto ctx = Context::make(1, 3);
    EXPECT_EQ(weyl_W(S(ctx, "h[2]")), E(ctx, "h[2]"));
    EXPECT_EQ(weyl_W(S(ctx, "h[2] h[1]")), E(ctx, std::string("h[2] h[1] + ") + kWeylCorr + " * h[1,2]"));
}

TEST(Weyl, AllOnesIsPlainSymmetrization) {
    auto ctx = Context::make(1, 3, Specialization{});
    auto w = S(ctx, "h[2] h[1] h[1]");
    auto expected = E(ctx, "1/6 h[2] h[1] h[1] + 1/6 h[1] h[2] h[1] + 1/6 h[1] h[1] h[2]").scaled(RationalFunction(2));
    EXPECT_EQ(weyl_W(w), expected);
}

TEST(Weyl, InverseOfTwoFactors) {
    auto ctx = Context::make(1, 3);
    EXPECT_EQ(weyl_W_inverse(E(ctx, "h[2]")), S(ctx, "h[2]"));
    EXPECT_EQ(weyl_W_inverse(E(ctx, "h[2] h[1]")), S(ctx, std::string("h[2] h[1] - ") + kWeylCorr + " * h[1,2]"));
    auto f = S(ctx, "h[2] h[1] h[1] + q[1,2] h[1,2] h[1] - 3 h[2]");
    EXPECT_EQ(weyl_W_inverse(weyl_W(f)), f);
}

TEST(Weyl, StarAndBracketOnGenerators) {
    auto ctx = Context::make(1, 3);
    auto h1 = S(ctx, "h[1]"), h2 = S(ctx, "h[2]");
    EXPECT_EQ(star_weyl(h2, h1), S(ctx, std::string("h[2] h[1] - ") + kWeylCorr + " * h[1,2]"));
    EXPECT_EQ(bracket_weyl(h2, h1), S(ctx, std::string("-") + kWeylCorr + " * h[1,2]"));
    EXPECT_EQ(star_weyl_recursive(h2, h1), star_weyl(h2, h1));
    EXPECT_TRUE(bracket_weyl(ShadowElement::unit(ctx), h1).is_zero());
    auto ones = Context::make(1, 3, Specialization{});
    EXPECT_EQ(bracket_weyl(S(ones, "h[2]"), S(ones, "h[1]")), S(ones, "-1/2 h[1,2]"));
    EXPECT_EQ(bracket_weyl(S(ones, "h[1]"), S(ones, "h[2]")), S(ones, "1/2 h[1,2]"));
}

TEST(Weyl, AntisymmetrizedBracket) {
    auto ctx = Context::make(1, 3);
    auto h1 = S(ctx, "h[1]"), h2 = S(ctx, "h[2]");
    EXPECT_EQ(bracket_weyl_antisym(h1, h2), S(ctx, "h[1,2]"));
    auto a = S(ctx, "h[2] h[1]"), b = S(ctx, "h[1,2]");
    EXPECT_TRUE(bracket_weyl_antisym(a, a).is_zero());
    auto lhs = bracket_weyl_antisym(a, b) + bracket_weyl_antisym(b, a).scaled(ctx->lift(swap_coeff({b.terms().begin()->first}, {a.terms().begin()->first})));
    EXPECT_TRUE(lhs.is_zero());
}

TEST(Distortion, WitnessAtN3) {
    auto ctx = Context::make(1, 3);
    auto w = distortion_witness(ctx);
    ASSERT_TRUE(w.found);
    auto g = LabelledTree::node(LabelledTree(1), LabelledTree(2));
    EXPECT_EQ(w.generator, g);
    auto hg = S(ctx, "h[1,2]");
    auto u = S(ctx, "h[1] h[2]");
    EXPECT_NE(weyl_W(hg * u), E(ctx, "h[1,2]") * weyl_W(u));
}

TEST(Distortion, AtN2TheSingleLeafCaseCommutes) {
    auto ctx = Context::make(1, 2);
    auto hg = S(ctx, "h[1,2]");
    for (auto u : {"h[1]", "h[2]"}) EXPECT_EQ(weyl_W(hg * S(ctx, u)), E(ctx, "h[1,2]") * weyl_W(S(ctx, u)));
}

TEST(Distortion, NoUniformLambda) {
    auto rep = lambda_check(Context::make(1, 3));
    EXPECT_FALSE(rep.exists);
    ASSERT_EQ(rep.ratios.size(), 2u);
}
