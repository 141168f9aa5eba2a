#include "epoche/errors.hpp"
#include "epoche/io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace epoche;

namespace {

ShadowElement random_shadow(const ContextPtr& ctx, std::mt19937_64& rng) {
    const auto pool = enumerate_positive(ctx->d(), ctx->N());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 3), num(-9, 9), den(1, 5), ex(-2, 2);
    ShadowElement e(ctx);
    for (int t = 0; t < 4; ++t) {
        Word w;
        for (int k = len(rng); k > 0; --k) w.push_back(pool[pick(rng)]);
        mpq_class c(num(rng), den(rng));
        c.canonicalize();
        RationalFunction coeff(c);
        coeff *= ctx->lift(Exponents::var(1, 2, ex(rng)));
        if (t == 3) coeff = coeff / (RationalFunction(1) + ctx->lift(Exponents::var(1, 2, 2)));
        e += shadow_word(ctx, w, coeff);
    }
    return e;
}

}  // namespace

TEST(Io, ParseExamples) {
    auto ctx = Context::make(1, 2);
    auto x = parse_envelope(ctx, "h[1] h[2]");
    EXPECT_EQ(format_element(x), "q[1,2]^-1 * h[2] h[1] + h[1,2]");
    EXPECT_TRUE(parse_envelope(ctx, "h[1,1]").is_zero());
    auto ctx2 = Context::make(2, 3);
    EXPECT_EQ(format_element(parse_shadow(ctx2, "h[3,[1,2]]")), "h[3,[1,2]]");
    EXPECT_EQ(format_element(parse_shadow(ctx2, "h[[1,2],3]")), "-q[1,3]^-1 q[2,3]^-1 * h[3,[1,2]]");
    EXPECT_EQ(format_element(parse_shadow(Context::make(1, 3), "h[[1,2],1]")), "-q[1,2] * h[1,[1,2]]");
    auto z = parse_shadow(ctx, "3/2 q[1,2]^-1 * h[1] - h[1]");
    EXPECT_EQ(z.coefficient({LabelledTree(1)}),
              RationalFunction(mpq_class(3, 2)) * ctx->lift(Exponents::var(1, 2, -1)) - RationalFunction(1));
}

TEST(Io, SyntaxErrorsCarryAPosition) {
    auto ctx = Context::make(1, 2);
    try {
        parse_shadow(ctx, "h[1] + * h[2]");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_GT(e.position(), 0u);
    }
    EXPECT_THROW(parse_shadow(ctx, "h[1"), ParseError);
    EXPECT_THROW(parse_shadow(ctx, "h[5]"), std::invalid_argument);
}

TEST(Io, TextRoundTrip) {
    std::mt19937_64 rng(11);
    for (int d = 1; d <= 2; ++d) {
        auto ctx = Context::make(d, 3);
        for (int t = 0; t < 100; ++t) {
            auto e = random_shadow(ctx, rng);
            const auto text = format_element(e);
            EXPECT_EQ(parse_shadow(ctx, text), e) << text;
        }
    }
}

TEST(Io, JsonRoundTrip) {
    std::mt19937_64 rng(12);
    auto ctx = Context::make(2, 3);
    for (int t = 0; t < 100; ++t) {
        auto e = random_shadow(ctx, rng);
        auto j = element_to_json(e);
        EXPECT_EQ(shadow_from_json(ctx, nlohmann::json::parse(j.dump())), e) << j.dump();
    }
}
