#include "epoche/algebra.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace epoche;

namespace {

LaurentPolynomial q(int i, int j, int e = 1) { return LaurentPolynomial::q(i, j, e); }
LabelledTree t(const char* s) { return parse_tree(s); }
Word word(std::initializer_list<const char*> xs) {
    Word w;
    for (auto x : xs) w.push_back(parse_tree(x));
    return w;
}

// All words of the given length over the pool.
std::vector<Word> all_words(const std::vector<LabelledTree>& pool, int len) {
    std::vector<Word> out{{}};
    for (int k = 0; k < len; ++k) {
        std::vector<Word> next;
        for (const auto& w : out)
            for (const auto& g : pool) {
                auto u = w;
                u.push_back(g);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST(Canonicalize, Basics) {
    auto ctx = Context::make(1, 3);
    auto c = canonicalize(*ctx, t("[2,1]"));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->second, t("[1,2]"));
    EXPECT_EQ(c->first, RationalFunction(-q(1, 2)));
    EXPECT_FALSE(canonicalize(*ctx, t("[1,1]")));
    EXPECT_FALSE(canonicalize(*ctx, t("[[1,2],[1,2]]")));
    EXPECT_FALSE(canonicalize(*Context::make(1, 2), t("[1,[1,2]]")));
    // [[1,2],2] = -q_pair(2,[1,2]) [2,[1,2]] = -q21 [2,[1,2]]
    auto d = canonicalize(*ctx, t("[[1,2],2]"));
    ASSERT_TRUE(d);
    EXPECT_EQ(d->second, t("[2,[1,2]]"));
    EXPECT_EQ(d->first, RationalFunction(-q(2, 1)));
    EXPECT_THROW(canonicalize(*ctx, t("3")), std::invalid_argument);
}

TEST(Shadow, Multiplication) {
    auto ctx = Context::make(1, 3);
    auto h1 = generator<AlgebraKind::Shadow>(ctx, t("1"));
    auto h2 = generator<AlgebraKind::Shadow>(ctx, t("2"));
    auto p = h1 * h2;
    EXPECT_EQ(p.coefficient(word({"2", "1"})), RationalFunction(q(2, 1)));
    EXPECT_EQ(h2 * h1, shadow_word(ctx, word({"2", "1"})));
    // associativity
    auto h12 = generator<AlgebraKind::Shadow>(ctx, t("[1,2]"));
    EXPECT_EQ((h1 * h12) * h2, h1 * (h12 * h2));
    EXPECT_EQ(LaurentPolynomial(swap_coeff(word({"1"}), word({"2"}))), q(1, 2));
}

TEST(NormalOrder, Generators) {
    auto ctx = Context::make(1, 2);
    auto e = normal_order(ctx, word({"1", "2"}));
    EXPECT_EQ(e.size(), 2u);
    EXPECT_EQ(e.coefficient(word({"2", "1"})), RationalFunction(q(2, 1)));
    EXPECT_EQ(e.coefficient(word({"[1,2]"})), RationalFunction(1));
    auto trunc = normal_order(Context::make(1, 1), word({"1", "2"}));
    EXPECT_EQ(trunc.size(), 1u);
    // already ordered words are fixed
    auto f = normal_order(ctx, word({"[1,2]", "2", "1", "1"}));
    EXPECT_EQ(f.size(), 1u);
    // non-positive factors are canonicalized first
    auto g = normal_order(ctx, word({"[2,1]"}));
    EXPECT_EQ(g.coefficient(word({"[1,2]"})), RationalFunction(-q(1, 2)));
}

TEST(NormalOrder, StepsStayWithinBound) {
    auto ctx = Context::make(1, 4);
    RewriteStats stats;
    normal_order(ctx, word({"1", "1", "2", "1", "2", "2"}), RationalFunction(1), {}, &stats);
    EXPECT_GT(stats.steps, 0u);
    EXPECT_LE(stats.steps, stats.bound);
    EXPECT_EQ(rewrite_step_bound(3), 3u * (1 + 1));
}

TEST(NormalOrder, ConfluentWhenOneVariablePairAndThreeLeaves) {
    auto ctx = Context::make(1, 3);
    auto pool = enumerate_positive(1, 3);
    for (int len = 2; len <= 3; ++len)
        for (const auto& w : all_words(pool, len)) {
            auto a = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::leftmost());
            auto b = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::rightmost());
            ASSERT_EQ(a, b);
        }
}

TEST(NormalOrder, ThreeDistinctGeneratorsOverlapDoesNotResolve) {
    // a < b < c: the two reductions of h[a] h[b] h[c] differ by a Jacobi-type
    // combination of distinct positive trees.
    auto ctx = Context::make(2, 3);
    auto w = word({"1", "2", "3"});
    auto a = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::leftmost());
    auto b = normal_order(ctx, w, RationalFunction(1), RewriteStrategy::rightmost());
    auto diff = a - b;
    EXPECT_FALSE(diff.is_zero());
    for (const auto& [u, c] : diff.terms()) EXPECT_EQ(degree(u), 2);
}

TEST(Envelope, GeneratorRelation) {
    auto ctx = Context::make(2, 3);
    for (const auto& x : enumerate_positive(2, 2))
        for (const auto& y : enumerate_positive(2, 2)) {
            if (!(x < y)) continue;
            auto hx = generator<AlgebraKind::Envelope>(ctx, x);
            auto hy = generator<AlgebraKind::Envelope>(ctx, y);
            auto lhs = hx * hy;
            auto rhs = (hy * hx).scaled(ctx->lift(q_pair(y, x))) + generator<AlgebraKind::Envelope>(ctx, LabelledTree::node(x, y));
            ASSERT_EQ(lhs, rhs) << x.to_string() << " " << y.to_string();
        }
}

TEST(Elements, GradedComponents) {
    auto ctx = Context::make(1, 3);
    auto e = normal_order(ctx, word({"1", "2"}));
    EXPECT_EQ(e.graded_component(1).size(), 1u);
    EXPECT_EQ(e.graded_component(0).size(), 1u);
    EXPECT_EQ(e.filtration_part(1), e.graded_component(1));
    auto r = e.degree_range();
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, 0);
    EXPECT_EQ(r->second, 1);
    auto other = EnvelopeElement(Context::make(2, 3));
    EXPECT_THROW((void)(e + other), ContextMismatch);
}
