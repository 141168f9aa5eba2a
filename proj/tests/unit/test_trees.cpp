#include "epoche/errors.hpp"
#include "epoche/trees.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <string>

using namespace epoche;

namespace {

// Pointer-based reference tree, compared straight from the recursive definition.
struct Ref {
    int label = 0;
    std::shared_ptr<Ref> l, r;
    int leaves() const { return l ? l->leaves() + r->leaves() : 1; }
};
using RefPtr = std::shared_ptr<Ref>;

RefPtr ref_of(const LabelledTree& g) {
    auto n = std::make_shared<Ref>();
    if (g.is_leaf()) {
        n->label = g.label();
    } else {
        n->l = ref_of(g.left());
        n->r = ref_of(g.right());
    }
    return n;
}

int ref_shape_cmp(const Ref& a, const Ref& b) {
    if (a.leaves() != b.leaves()) return a.leaves() < b.leaves() ? -1 : 1;
    if (!a.l) return 0;
    if (int c = ref_shape_cmp(*a.l, *b.l)) return c;
    return ref_shape_cmp(*a.r, *b.r);
}

void ref_word(const Ref& a, std::vector<int>& out) {
    if (!a.l) {
        out.push_back(a.label);
        return;
    }
    ref_word(*a.l, out);
    ref_word(*a.r, out);
}

int ref_cmp(const Ref& a, const Ref& b) {
    if (int c = ref_shape_cmp(a, b)) return c;
    std::vector<int> wa, wb;
    ref_word(a, wa);
    ref_word(b, wb);
    if (wa == wb) return 0;
    return wa < wb ? -1 : 1;
}

bool ref_positive(const Ref& a) {
    if (!a.l) return true;
    return ref_positive(*a.l) && ref_positive(*a.r) && ref_cmp(*a.l, *a.r) < 0;
}

// Every labelled tree with 1..n leaves, built by brute recursion.
std::vector<LabelledTree> all_trees(int d, int n) {
    std::vector<std::vector<LabelledTree>> by(n + 1);
    for (int i = 1; i <= 2 * d; ++i) by[1].emplace_back(i);
    for (int k = 2; k <= n; ++k)
        for (int p = 1; p < k; ++p)
            for (const auto& a : by[p])
                for (const auto& b : by[k - p]) by[k].push_back(LabelledTree::node(a, b));
    std::vector<LabelledTree> out;
    for (auto& v : by) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

TEST(Trees, ParseAndPrint) {
    for (std::string s : {"1", "12", "[1,2]", "[[1,2],3]", "[1,[[2,2],4]]"}) EXPECT_EQ(parse_tree(s).to_string(), s);
    auto g = parse_tree("[[1,2],3]");
    EXPECT_EQ(g.leaves(), 3);
    EXPECT_EQ(g.left().to_string(), "[1,2]");
    EXPECT_EQ(g.right().to_string(), "3");
    EXPECT_EQ(g.word(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(g.shape().to_string(), "[[*,*],*]");
}

TEST(Trees, ParseErrors) {
    for (std::string s : {"", "0", "[1,2", "[1;2]", "[1,2]]", "a", "[1,]", "01"}) EXPECT_THROW(parse_tree(s), ParseError) << s;
}

TEST(Trees, OrderMatchesRecursiveDefinition) {
    auto trees = all_trees(1, 4);
    auto more = all_trees(2, 3);
    trees.insert(trees.end(), more.begin(), more.end());
    for (const auto& a : trees) {
        auto ra = ref_of(a);
        for (const auto& b : trees) {
            auto rb = ref_of(b);
            ASSERT_EQ(compare_ltrees(a, b), ref_cmp(*ra, *rb)) << a.to_string() << " vs " << b.to_string();
            ASSERT_EQ(compare_shapes(a.shape(), b.shape()), ref_shape_cmp(*ra, *rb));
        }
    }
}

TEST(Trees, SmallestTreesInOrder) {
    // d = 1: 1 < 2 < [1,1] < [1,2] < [2,1] < [2,2] < [1,[1,1]] ...
    std::vector<std::string> expect{"1", "2", "[1,1]", "[1,2]", "[2,1]", "[2,2]", "[1,[1,1]]"};
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(unrank(i + 1, 1).to_string(), expect[i]);
    EXPECT_LT(parse_tree("[2,[1,2]]"), parse_tree("[[1,2],1]"));
}

TEST(Trees, RankMatchesEnumeration) {
    for (auto [d, n] : {std::pair{1, 5}, std::pair{2, 3}, std::pair{3, 2}}) {
        auto trees = all_trees(d, n);
        std::sort(trees.begin(), trees.end(), [](const auto& a, const auto& b) {
            return ref_cmp(*ref_of(a), *ref_of(b)) < 0;
        });
        for (std::size_t i = 0; i < trees.size(); ++i) {
            ASSERT_EQ(rank(trees[i], d), mpz_class(static_cast<unsigned long>(i + 1))) << trees[i].to_string();
            ASSERT_EQ(unrank(i + 1, d), trees[i]);
        }
    }
}

TEST(Trees, RankRoundTripLarge) {
    mpz_class big("123456789012345678901234567890");
    auto g = unrank(big, 2);
    EXPECT_EQ(rank(g, 2), big);
    EXPECT_THROW(unrank(0, 1), std::out_of_range);
    EXPECT_THROW(rank(parse_tree("3"), 1), std::invalid_argument);
}

TEST(Trees, ShapeRankIsBijective) {
    for (int n = 1; n <= 7; ++n) {
        auto shapes = enumerate_shapes(n);
        ASSERT_EQ(mpz_class(static_cast<unsigned long>(shapes.size())), catalan(n - 1));
        std::vector<Shape> sorted = shapes;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            ASSERT_EQ(shape_rank(sorted[i]), mpz_class(static_cast<unsigned long>(i)));
            ASSERT_EQ(shape_unrank(n, i), sorted[i]);
        }
    }
}

TEST(Trees, Catalan) {
    std::vector<int> c{1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(catalan(static_cast<int>(i)), c[i]);
    EXPECT_EQ(catalan(30), mpz_class("3814986502092304"));
}

TEST(Trees, PositiveTrees) {
    EXPECT_TRUE(is_positive(parse_tree("[1,2]")));
    EXPECT_FALSE(is_positive(parse_tree("[2,1]")));
    EXPECT_FALSE(is_positive(parse_tree("[1,1]")));
    EXPECT_TRUE(is_positive(parse_tree("[2,[1,2]]")));
    EXPECT_FALSE(is_positive(parse_tree("[[1,2],2]")));
    for (auto [d, n] : {std::pair{1, 5}, std::pair{2, 4}}) {
        std::vector<LabelledTree> expect;
        for (const auto& t : all_trees(d, n))
            if (ref_positive(*ref_of(t))) expect.push_back(t);
        std::sort(expect.begin(), expect.end());
        EXPECT_EQ(enumerate_positive(d, n), expect);
    }
    // d = 1 counts by size: 2, 1, 2
    auto p = enumerate_positive(1, 3);
    EXPECT_EQ(p.size(), 5u);
}

TEST(Trees, Compose) {
    auto t = parse_tree("[[1,1],1]").shape();
    std::vector<LabelledTree> args{parse_tree("3"), parse_tree("[1,2]"), parse_tree("4")};
    EXPECT_EQ(compose(t, args).to_string(), "[[3,[1,2]],4]");
    EXPECT_EQ(compose(t, {2, 0, 1}, args).to_string(), "[[4,3],[1,2]]");
    EXPECT_THROW(compose(t, {args[0]}), std::invalid_argument);
}

TEST(Trees, Dot) {
    auto dot = to_dot(parse_tree("[1,2]"));
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("label=\"2\""), std::string::npos);
}
