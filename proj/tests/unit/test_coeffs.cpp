#include "epoche/coeffs.hpp"
#include "epoche/context.hpp"
#include "epoche/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace epoche;

namespace {

LaurentPolynomial q(int i, int j, int e = 1) { return LaurentPolynomial::q(i, j, e); }

std::vector<LabelledTree> trees(std::initializer_list<const char*> xs) {
    std::vector<LabelledTree> out;
    for (auto x : xs) out.push_back(parse_tree(x));
    return out;
}

// Sorts the permuted word back with adjacent swaps, one shadow relation per swap.
LaurentPolynomial q_perm_by_sorting(const std::vector<LabelledTree>& g, const Permutation& s) {
    std::vector<int> idx = s.images();
    LaurentPolynomial f(1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            int a = idx[k], b = idx[k + 1];
            if (a > b) {
                // h[G_a] h[G_b] = q_pair(G_b, G_a) h[G_b] h[G_a]
                f *= LaurentPolynomial(q_pair(g[static_cast<std::size_t>(b)], g[static_cast<std::size_t>(a)]));
                std::swap(idx[k], idx[k + 1]);
                changed = true;
            }
        }
    }
    return f;
}

std::vector<LabelledTree> random_tuple(std::mt19937_64& rng, int d, int max_leaves, int n) {
    auto pool = enumerate_positive(d, max_leaves);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<LabelledTree> out;
    for (int i = 0; i < n; ++i) out.push_back(pool[pick(rng)]);
    return out;
}

}  // namespace

TEST(Laurent, Arithmetic) {
    auto a = q(1, 2) + LaurentPolynomial(1);
    auto b = q(1, 2) - LaurentPolynomial(1);
    EXPECT_EQ(a * b, q(1, 2, 2) - LaurentPolynomial(1));
    EXPECT_EQ(q(2, 1), q(1, 2, -1));
    EXPECT_EQ(q(1, 2) * q(2, 1), LaurentPolynomial(1));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a * a).to_string(), "q[1,2]^2 + 2 q[1,2] + 1");
    EXPECT_EQ(LaurentPolynomial(mpq_class(3, 2)).to_string(), "3/2");
    EXPECT_EQ((q(1, 2, -1) * q(1, 3, 2) * LaurentPolynomial(mpq_class(3, 2))).to_string(), "3/2 q[1,2]^-1 q[1,3]^2");
}

TEST(Laurent, ExactDivision) {
    auto f = q(1, 2) + q(1, 3, -1) + LaurentPolynomial(2);
    auto g = q(1, 2, 2) - q(2, 3);
    auto prod = f * g * q(1, 3, -3);
    auto d = prod.divide(f);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, g * q(1, 3, -3));
    EXPECT_FALSE((prod + LaurentPolynomial(1)).divide(f).has_value());
    EXPECT_EQ(*LaurentPolynomial(0).divide(f), LaurentPolynomial(0));
}

TEST(Laurent, SplitUnit) {
    auto p = (q(1, 2, 2) * LaurentPolynomial(mpq_class(2, 3)) + LaurentPolynomial(mpq_class(4, 3))) * q(1, 3, -2);
    auto [unit, rest] = p.split_unit();
    EXPECT_EQ(unit * rest, p);
    EXPECT_EQ(rest, q(1, 2, 2) + LaurentPolynomial(2));
    EXPECT_TRUE(unit.is_monomial());
}

TEST(RationalFunction, FieldOperations) {
    auto z1 = RationalFunction(LaurentPolynomial(1) + q(1, 2, 2));
    auto z2 = RationalFunction(LaurentPolynomial(1) + q(1, 2, -2));
    auto x = RationalFunction(q(1, 2)) / z1;
    auto y = RationalFunction(q(1, 2, -1)) / z2;
    // q/(1+q^2) = q^-1/(1+q^-2)
    EXPECT_EQ(x, y);
    EXPECT_EQ(x * x.inverse(), RationalFunction(1));
    EXPECT_EQ((x + y) - x, y);
    EXPECT_TRUE((x - y).is_zero());
    auto s = RationalFunction(1) / z1 + RationalFunction(q(1, 2, 2)) / z1;
    EXPECT_EQ(s, RationalFunction(1));
    EXPECT_TRUE(s.is_constant());
    Specialization sp;
    sp.values[qvar_index(1, 2)] = mpq_class(2);
    EXPECT_EQ(x.evaluate(sp), mpq_class(2, 5));
}

TEST(RationalFunction, RandomAgreesWithEvaluation) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), v(0, 2);
    auto rnd_poly = [&] {
        LaurentPolynomial p;
        for (int k = 0; k < 3; ++k) {
            int i = 1 + v(rng), j = 4;
            p += LaurentPolynomial(Exponents::var(i, j, e(rng)), c(rng));
        }
        return p.is_zero() ? LaurentPolynomial(1) : p;
    };
    Specialization sp;
    sp.values[qvar_index(1, 4)] = mpq_class(3, 7);
    sp.values[qvar_index(2, 4)] = mpq_class(5, 2);
    sp.values[qvar_index(3, 4)] = mpq_class(11, 13);
    for (int t = 0; t < 40; ++t) {
        auto a = rnd_poly(), b = rnd_poly(), cc = rnd_poly(), dd = rnd_poly();
        if (b.evaluate(sp) == 0 || dd.evaluate(sp) == 0) continue;
        auto x = RationalFunction::quotient(a, b);
        auto y = RationalFunction::quotient(cc, dd);
        EXPECT_EQ((x + y).evaluate(sp), a.evaluate(sp) / b.evaluate(sp) + cc.evaluate(sp) / dd.evaluate(sp));
        EXPECT_EQ((x * y).evaluate(sp), a.evaluate(sp) / b.evaluate(sp) * cc.evaluate(sp) / dd.evaluate(sp));
        EXPECT_EQ((x + y) * RationalFunction(b * dd), RationalFunction(a * dd + cc * b));
    }
}

TEST(Coeffs, QPairAndSwap) {
    auto g = trees({"1", "2"});
    EXPECT_EQ(LaurentPolynomial(q_pair(g[0], g[1])), q(1, 2));
    EXPECT_EQ(LaurentPolynomial(q_perm(g, Permutation({1, 0}))), q(1, 2));
    EXPECT_TRUE(q_perm(g, Permutation::identity(2)).is_one());
    // q_pair([1,2],[1,3]) = q11 q13 q21 q23 = q13 q12^-1 q23
    EXPECT_EQ(LaurentPolynomial(q_pair(parse_tree("[1,2]"), parse_tree("[1,3]"))), q(1, 3) * q(1, 2, -1) * q(2, 3));
}

TEST(Coeffs, QPermMatchesSorting) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 4; ++n)
        for (int rep = 0; rep < 5; ++rep) {
            auto g = random_tuple(rng, 2, 3, n);
            for (const auto& s : all_permutations(n)) ASSERT_EQ(LaurentPolynomial(q_perm(g, s)), q_perm_by_sorting(g, s));
        }
}

TEST(Coeffs, QPermCocycle) {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        auto g = random_tuple(rng, 2, 2, 4);
        auto perms = all_permutations(4);
        for (const auto& s : perms)
            for (const auto& t : perms) {
                auto lhs = q_perm(g, s * t);
                auto rhs = q_perm(g, s) * q_perm(s.apply(g), t);
                ASSERT_EQ(lhs, rhs);
            }
    }
}

TEST(Coeffs, WeylCoefficientIdentities) {
    std::mt19937_64 rng(13);
    for (int n = 1; n <= 3; ++n)
        for (int rep = 0; rep < 4; ++rep) {
            auto g = random_tuple(rng, 2, 2, n);
            auto perms = all_permutations(n);
            RationalFunction sum;
            for (const auto& s : perms) sum += weyl_coeff(g, s) * RationalFunction(LaurentPolynomial(q_perm(g, s)));
            EXPECT_EQ(sum, RationalFunction(1));
            for (const auto& s : perms)
                for (const auto& t : perms) {
                    auto lhs = weyl_coeff(t.apply(g), t.inverse() * s);
                    auto rhs = RationalFunction(LaurentPolynomial(q_perm(g, t))) * weyl_coeff(g, s);
                    ASSERT_EQ(lhs, rhs);
                }
        }
    auto two = trees({"2", "1"});
    // Z = 1 + q12^-2 for (2,1)
    EXPECT_EQ(partition_Z(two), LaurentPolynomial(1) + q(1, 2, -2));
}

TEST(Coeffs, Shuffles) {
    EXPECT_EQ(shuffles({3}).size(), 1u);
    EXPECT_TRUE(shuffles({3})[0].is_identity());
    for (auto parts : std::vector<std::vector<int>>{{1, 1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 3, 1}, {2, 0, 2}}) {
        int n = 0;
        for (int m : parts) n += m;
        std::vector<Permutation> brute;
        for (const auto& s : all_permutations(n)) {
            bool ok = true;
            int start = 0;
            for (int m : parts) {
                for (int k = start; k + 1 < start + m; ++k) ok = ok && s(k) < s(k + 1);
                start += m;
            }
            if (ok) brute.push_back(s);
        }
        EXPECT_EQ(shuffles(parts), brute);
    }
    EXPECT_EQ(shuffles({2, 2, 1}).size(), 30u);
}

TEST(Coeffs, PermutationAlgebra) {
    Permutation s({1, 2, 0}), t({0, 2, 1});
    EXPECT_EQ((s * t)(1), s(t(1)));
    EXPECT_TRUE((s * s.inverse()).is_identity());
    EXPECT_EQ(s.to_string(), "(2,3,1)");
    EXPECT_THROW(Permutation({0, 0}), std::invalid_argument);
    auto g = trees({"1", "2", "3"});
    EXPECT_EQ(s.apply(g)[0].to_string(), "2");
}

TEST(Context, Specialization) {
    auto s = parse_specialization("1,2=3/2;2,1=2");
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->value(qvar_index(1, 2)), mpq_class(1, 2));
    EXPECT_FALSE(parse_specialization("symbolic").has_value());
    EXPECT_TRUE(parse_specialization("all-ones")->values.empty());
    EXPECT_THROW(parse_specialization("1,2=0"), ConfigError);
    EXPECT_THROW(parse_specialization("garbage"), ConfigError);
    EXPECT_THROW(Context(0, 3), ConfigError);
}
