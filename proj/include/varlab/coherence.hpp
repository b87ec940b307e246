#pragma once

// Algebraic coherence of a variety through the eight-term criterion on
// z(xy), and the split of alternating varieties into Lie-type and
// antiassociative-type.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "varlab/tideal.hpp"

namespace varlab {

/// z(xy) and the eight degree-3 words it is expressed in, in fixed order.
inline const Polynomial& coherence_target() {
    static const Polynomial p = parse_polynomial("z*(x*y)");
    return p;
}
inline const std::array<Polynomial, 8>& coherence_terms() {
    static const std::array<Polynomial, 8> t{
        parse_polynomial("y*(z*x)"), parse_polynomial("x*(y*z)"), parse_polynomial("y*(x*z)"),
        parse_polynomial("x*(z*y)"), parse_polynomial("(z*x)*y"), parse_polynomial("(y*z)*x"),
        parse_polynomial("(x*z)*y"), parse_polynomial("(z*y)*x"),
    };
    return t;
}

struct CoherenceSolution {
    bool solvable = false;
    std::optional<std::vector<Rational>> particular;  // lambda_1..lambda_8
    std::vector<std::vector<Rational>> freedom;       // homogeneous solutions

    std::size_t freedom_rank() const noexcept { return freedom.size(); }
};

/// z(xy) - sum_i lambda_i t_i.
inline Polynomial coherence_residual(const std::vector<Rational>& lambda) {
    Polynomial p = coherence_target();
    for (std::size_t i = 0; i < 8; ++i) p -= scale(lambda.at(i), coherence_terms()[i]);
    return p;
}

/// Solves [z(xy)] = sum lambda_i [t_i] in the multilinear degree-3 component
/// of the relatively free algebra.
inline CoherenceSolution solve_coherence(const VarietyPresentation& v,
                                         ConsequenceCache& cache = default_cache()) {
    auto cs = consequence_space(v, coherence_target().multidegree(), cache);
    auto coords = [&](const Polynomial& p) {
        SparseVec<Rational> out;
        auto r = cs->reduce(p);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) out.emplace_back(i, r[i]);
        return out;
    };
    std::vector<SparseVec<Rational>> cols;
    for (auto& t : coherence_terms()) cols.push_back(coords(t));
    auto sol = solve_affine<Rational>(cols, coords(coherence_target()), cs->quotient_dimension());

    CoherenceSolution out;
    out.solvable = sol.solvable;
    if (sol.solvable) out.particular = sol.particular;
    out.freedom = std::move(sol.homogeneous);
    return out;
}

inline bool is_algebraically_coherent(const VarietyPresentation& v, ConsequenceCache& cache = default_cache()) {
    return solve_coherence(v, cache).solvable;
}

enum class AlternatingClass { LieBranch, AntiassociativeBranch, Both, Neither };

inline std::string to_string(AlternatingClass c) {
    switch (c) {
        case AlternatingClass::LieBranch: return "LieBranch";
        case AlternatingClass::AntiassociativeBranch: return "AntiassociativeBranch";
        case AlternatingClass::Both: return "Both";
        case AlternatingClass::Neither: return "Neither";
    }
    return "?";
}

class NotAlternatingError : public Error {
public:
    explicit NotAlternatingError(const std::string& variety)
        : Error("variety '" + variety + "' is not alternating: x*x is not a law") {}
};

struct AlternatingClassification {
    AlternatingClass verdict;
    bool jacobi = false;            // Jacobi identity is a law
    bool antiassociative = false;   // x(yz) + (xy)z is a law

    bool in_lie_branch() const noexcept { return jacobi; }
    bool in_antiassociative_branch() const noexcept { return antiassociative; }
};

/// Requires x*x to be a law.
inline AlternatingClassification classify_alternating(const VarietyPresentation& v,
                                                      ConsequenceCache& cache = default_cache()) {
    if (!is_law(v, parse_polynomial(identities::alternating), cache)) throw NotAlternatingError(v.name());
    AlternatingClassification c{};
    c.jacobi = is_law(v, parse_polynomial(identities::jacobi), cache);
    c.antiassociative = is_law(v, parse_polynomial(identities::antiassociative), cache);
    if (c.jacobi && c.antiassociative)
        c.verdict = AlternatingClass::Both;
    else if (c.jacobi)
        c.verdict = AlternatingClass::LieBranch;
    else if (c.antiassociative)
        c.verdict = AlternatingClass::AntiassociativeBranch;
    else
        c.verdict = AlternatingClass::Neither;
    return c;
}

}  // namespace varlab
