#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "varlab/words.hpp"

using namespace varlab;

namespace {

MagmaWord L(const char* v) { return MagmaWord::leaf(v); }
MagmaWord N(const MagmaWord& a, const MagmaWord& b) { return MagmaWord::node(a, b); }

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }
long long catalan(int n) { return factorial(2 * n) / (factorial(n + 1) * factorial(n)); }

long long expected_count(const Multidegree& d) {
    long long m = factorial(d.total());
    for (auto& [v, c] : d.counts()) m /= factorial(c);
    return catalan(d.total() - 1) * m;
}

}  // namespace

TEST(VarId, RejectsBadNames) {
    EXPECT_THROW(VarId(""), Error);
    EXPECT_THROW(VarId("1x"), Error);
    EXPECT_THROW(VarId("x-y"), Error);
    EXPECT_NO_THROW(VarId("x_2"));
    EXPECT_NO_THROW(VarId("b12"));
}

TEST(VarId, OrderIsByName) {
    EXPECT_LT(VarId("b"), VarId("x"));
    EXPECT_LT(VarId("x"), VarId("x_2"));
    EXPECT_EQ(VarId("y"), VarId("y"));
}

TEST(Multidegree, OfWords) {
    EXPECT_EQ(word_multidegree(L("x")), Multidegree::of({{"x", 1}}));
    EXPECT_EQ(word_multidegree(N(L("x"), L("x"))), Multidegree::of({{"x", 2}}));
    EXPECT_EQ(word_multidegree(N(N(L("b"), L("x")), L("y"))), Multidegree::of({{"b", 1}, {"x", 1}, {"y", 1}}));
}

TEST(Multidegree, ArithmeticAndDivides) {
    auto a = Multidegree::of({{"x", 2}, {"y", 1}});
    auto b = Multidegree::of({{"x", 1}});
    EXPECT_TRUE(b.divides(a));
    EXPECT_FALSE(a.divides(b));
    EXPECT_EQ((a - b), Multidegree::of({{"x", 1}, {"y", 1}}));
    EXPECT_EQ((a - a).total(), 0);
    EXPECT_TRUE((a - a).empty());
    EXPECT_THROW(b - a, Error);
    EXPECT_EQ(a.str(), "x:2,y:1");
}

TEST(Multidegree, SubMultidegreesCount) {
    auto d = Multidegree::of({{"x", 2}, {"y", 1}});
    EXPECT_EQ(sub_multidegrees(d).size(), 5u);  // 3*2 - 1
}

TEST(Words, HashConsing) {
    EXPECT_EQ(N(L("x"), L("y")), N(L("x"), L("y")));
    EXPECT_FALSE(N(L("x"), L("y")) == N(L("y"), L("x")));
    EXPECT_EQ(N(L("x"), N(L("y"), L("z"))).str(), "x*(y*z)");
    EXPECT_EQ(N(N(L("x"), L("y")), L("z")).str(), "(x*y)*z");
}

TEST(Words, CompareExamples) {
    EXPECT_LT(compare_words(L("x"), L("y")), 0);
    EXPECT_LT(compare_words(L("x"), N(L("x"), L("y"))), 0);
    EXPECT_LT(compare_words(N(L("x"), L("y")), N(L("y"), L("x"))), 0);
    EXPECT_EQ(compare_words(N(L("x"), L("y")), N(L("x"), L("y"))), 0);
}

TEST(Words, EnumerateSmall) {
    const auto& one = enumerate_words(Multidegree::of({{"x", 1}}));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], L("x"));
    const auto& two = enumerate_words(Multidegree::of({{"x", 1}, {"y", 1}}));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].str(), "x*y");
    EXPECT_EQ(two[1].str(), "y*x");
    EXPECT_EQ(enumerate_words(Multidegree::of({{"x", 1}, {"y", 1}, {"z", 1}})).size(), 12u);
}

TEST(Words, EnumerationMatchesFormulaAndBruteForce) {
    std::vector<Multidegree> cases = {
        Multidegree::of({{"x", 3}}),
        Multidegree::of({{"x", 2}, {"y", 1}}),
        Multidegree::of({{"x", 2}, {"y", 2}}),
        Multidegree::of({{"x", 1}, {"y", 1}, {"z", 1}, {"w", 1}}),
        Multidegree::of({{"a", 2}, {"b", 1}, {"c", 2}}),
    };
    for (auto& d : cases) {
        const auto& ws = enumerate_words(d);
        EXPECT_EQ(static_cast<long long>(ws.size()), expected_count(d)) << d;
        std::set<std::string> got;
        for (auto& w : ws) {
            EXPECT_EQ(w.multidegree(), d);
            got.insert(w.str());
        }
        EXPECT_EQ(got, oracle::brute_words(d)) << d;
        EXPECT_TRUE(std::is_sorted(ws.begin(), ws.end(), WordLess{}));
        for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_EQ(word_index(ws[i]), i);
    }
}

TEST(Words, CompareIsStrictTotalOrder) {
    std::vector<MagmaWord> pool;
    for (auto& d : {Multidegree::of({{"x", 2}, {"y", 1}}), Multidegree::of({{"x", 1}, {"y", 1}}),
                    Multidegree::of({{"y", 1}, {"z", 2}}), Multidegree::of({{"x", 1}})})
        for (auto& w : enumerate_words(d)) pool.push_back(w);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 3000; ++t) {
        auto& a = pool[pick(rng)];
        auto& b = pool[pick(rng)];
        auto& c = pool[pick(rng)];
        int ab = compare_words(a, b), ba = compare_words(b, a);
        EXPECT_EQ(ab, -ba);
        EXPECT_EQ(ab == 0, a == b);
        if (ab < 0 && compare_words(b, c) < 0) {
            EXPECT_LT(compare_words(a, c), 0);
        }
    }
}

TEST(Words, SubstituteLeaves) {
    auto w = N(L("x"), N(L("y"), L("x")));
    auto s = substitute_leaves(w, [](const VarId& v) {
        return v.name() == "x" ? MagmaWord::node(MagmaWord::leaf("a"), MagmaWord::leaf("b")) : MagmaWord::leaf(v);
    });
    EXPECT_EQ(s.str(), "(a*b)*(y*(a*b))");
}

TEST(Words, RenderWithCustomLeaves) {
    auto w = N(L("x"), N(L("y"), L("b")));
    auto s = w.render_with([](const VarId& v, bool nested) {
        return v.name() == "x" ? std::string(nested ? "(X)" : "X") : v.name();
    });
    EXPECT_EQ(s, "(X)*(y*b)");
}
