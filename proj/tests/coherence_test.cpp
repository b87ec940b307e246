#include <gtest/gtest.h>

#include <random>

#include "varlab/coherence.hpp"

using namespace varlab;

namespace {

std::vector<Rational> ints(std::initializer_list<int> xs) {
    std::vector<Rational> out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

bool in_solution_set(const VarietyPresentation& v, const std::vector<Rational>& lambda) {
    return is_law(v, coherence_residual(lambda));
}

}  // namespace

TEST(Coherence, TermsInFixedOrder) {
    std::vector<std::string> expect = {"y*(z*x)", "x*(y*z)", "y*(x*z)", "x*(z*y)",
                                       "(z*x)*y", "(y*z)*x", "(x*z)*y", "(z*y)*x"};
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(coherence_terms()[i].str(), expect[i]);
    EXPECT_EQ(coherence_target().str(), "z*(x*y)");
}

TEST(Coherence, LieSolvableWithMinusOnes) {
    auto lie = builtin_variety(Builtin::Lie);
    auto s = solve_coherence(lie);
    ASSERT_TRUE(s.solvable);
    EXPECT_TRUE(in_solution_set(lie, *s.particular));
    EXPECT_TRUE(in_solution_set(lie, ints({-1, -1, 0, 0, 0, 0, 0, 0})));
    EXPECT_EQ(*s.particular, ints({-1, -1, 0, 0, 0, 0, 0, 0}));
}

TEST(Coherence, AbelianAllFree) {
    auto s = solve_coherence(builtin_variety(Builtin::Abelian));
    ASSERT_TRUE(s.solvable);
    EXPECT_EQ(s.freedom_rank(), 8u);
}

TEST(Coherence, AlgUnsolvable) {
    auto s = solve_coherence(builtin_variety(Builtin::Alg));
    EXPECT_FALSE(s.solvable);
    EXPECT_FALSE(s.particular);
    EXPECT_FALSE(is_algebraically_coherent(builtin_variety(Builtin::Alg)));
}

TEST(Coherence, LeibnizRightCoherent) {
    EXPECT_TRUE(is_algebraically_coherent(builtin_variety(Builtin::LeibnizRight)));
    EXPECT_TRUE(is_algebraically_coherent(builtin_variety(Builtin::Lie)));
}

TEST(Coherence, SolutionSetIsExactlyTheAffineSpace) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> c(-3, 3);
    for (auto& [key, name] : builtin_keys()) {
        auto v = builtin_variety(key);
        auto s = solve_coherence(v);
        if (!s.solvable) continue;
        for (int t = 0; t < 6; ++t) {
            auto lambda = *s.particular;
            for (auto& f : s.freedom) {
                Rational k(c(rng), 1 + rng() % 3);
                for (std::size_t i = 0; i < 8; ++i) lambda[i] += k * f[i];
            }
            EXPECT_TRUE(in_solution_set(v, lambda)) << name;
        }
        if (s.freedom_rank() == 8) continue;
        // Some coordinate direction leaves the affine set.
        bool found_outside = false;
        for (std::size_t i = 0; i < 8 && !found_outside; ++i) {
            auto lambda = *s.particular;
            lambda[i] += 1;
            found_outside = !in_solution_set(v, lambda);
        }
        EXPECT_TRUE(found_outside) << name;
    }
}

TEST(Coherence, ScalingIdentitiesKeepsSolutions) {
    for (auto& [key, name] : builtin_keys()) {
        auto v = builtin_variety(key);
        std::vector<Identity> scaled;
        for (auto& id : v.identities()) scaled.emplace_back(scale(Rational(-5, 3), id.polynomial()));
        VarietyPresentation w(name + "-scaled", scaled);
        auto a = solve_coherence(v), b = solve_coherence(w);
        EXPECT_EQ(a.solvable, b.solvable) << name;
        EXPECT_EQ(a.particular, b.particular) << name;
        EXPECT_EQ(a.freedom, b.freedom) << name;
    }
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_alternating(builtin_variety(Builtin::Lie)).verdict, AlternatingClass::LieBranch);
    EXPECT_EQ(classify_alternating(builtin_variety(Builtin::AAAAlg)).verdict,
              AlternatingClass::AntiassociativeBranch);
    auto alt = builtin_variety(Builtin::Alt);
    EXPECT_EQ(classify_alternating(alt).verdict, AlternatingClass::Neither);
    EXPECT_FALSE(is_algebraically_coherent(alt));
    EXPECT_THROW(classify_alternating(builtin_variety(Builtin::Assoc)), NotAlternatingError);
    EXPECT_THROW(classify_alternating(builtin_variety(Builtin::Alg)), NotAlternatingError);
}

TEST(Classify, AltAssocIsAntiassociativeWithCubeLaw) {
    auto v = unite(builtin_variety(Builtin::Alt), builtin_variety(Builtin::Assoc), "AltAssoc");
    auto c = classify_alternating(v);
    EXPECT_TRUE(c.in_antiassociative_branch());
    EXPECT_TRUE(is_law(v, parse_polynomial("x*(y*z)")));
    EXPECT_TRUE(is_law(v, parse_polynomial("(x*y)*z")));
    // Every product of three elements vanishes, so Jacobi holds as well.
    EXPECT_TRUE(c.in_lie_branch());
    EXPECT_EQ(c.verdict, AlternatingClass::Both);
}

TEST(Classify, ConsistentWithCoherence) {
    std::vector<VarietyPresentation> vs = {
        builtin_variety(Builtin::Lie), builtin_variety(Builtin::Alt), builtin_variety(Builtin::AAAAlg),
        builtin_variety(Builtin::Abelian),
        unite(builtin_variety(Builtin::Alt), builtin_variety(Builtin::Assoc), "AltAssoc"),
        builtin_variety(Builtin::Alt).with_identity(Identity::parse("(x*y)*(z*w)"), "AltMetab"),
        builtin_variety(Builtin::Lie).with_identity(Identity::parse("x*(y*z)"), "LieNil2"),
        builtin_variety(Builtin::Alt).with_identity(Identity::parse("x*(y*(z*w))"), "AltNil3"),
    };
    for (auto& v : vs) {
        auto c = classify_alternating(v);
        EXPECT_EQ(c.verdict != AlternatingClass::Neither, is_algebraically_coherent(v)) << v.name();
    }
}
