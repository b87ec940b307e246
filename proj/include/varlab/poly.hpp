#pragma once

// Polynomials of the free nonassociative algebra: finite linear combinations
// of magma words with exact coefficients.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "varlab/scalar.hpp"
#include "varlab/words.hpp"

namespace varlab {

class MissingVariableError : public Error {
public:
    explicit MissingVariableError(const VarId& v)
        : Error("no image given for variable '" + v.name() + "'"), var_(v) {}
    const VarId& var() const noexcept { return var_; }

private:
    VarId var_;
};

template <class Field>
class BasicPolynomial {
public:
    using Terms = std::map<MagmaWord, Field, WordLess>;

    BasicPolynomial() = default;
    BasicPolynomial(const MagmaWord& w, Field c = Field(1)) {  // NOLINT(implicit)
        if (c != 0) terms_.emplace(w, std::move(c));
    }
    static BasicPolynomial var(const std::string& name) { return {MagmaWord::leaf(name)}; }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Field coefficient(const MagmaWord& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Field(0) : it->second;
    }

    void add_term(const MagmaWord& w, const Field& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BasicPolynomial& operator+=(const BasicPolynomial& q) {
        for (auto& [w, c] : q.terms_) add_term(w, c);
        return *this;
    }
    BasicPolynomial& operator-=(const BasicPolynomial& q) {
        for (auto& [w, c] : q.terms_) add_term(w, -c);
        return *this;
    }
    friend BasicPolynomial operator+(BasicPolynomial p, const BasicPolynomial& q) { return p += q; }
    friend BasicPolynomial operator-(BasicPolynomial p, const BasicPolynomial& q) { return p -= q; }
    friend BasicPolynomial operator-(const BasicPolynomial& p) { return scale(Field(-1), p); }

    friend BasicPolynomial scale(const Field& c, const BasicPolynomial& p) {
        BasicPolynomial out;
        if (c == 0) return out;
        for (auto& [w, x] : p.terms_) out.terms_.emplace_hint(out.terms_.end(), w, c * x);
        return out;
    }
    friend BasicPolynomial operator*(const Field& c, const BasicPolynomial& p) { return scale(c, p); }

    /// Bilinear extension of word formation.
    friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
        BasicPolynomial out;
        for (auto& [u, a] : p.terms_)
            for (auto& [v, b] : q.terms_) out.add_term(MagmaWord::node(u, v), a * b);
        return out;
    }

    friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

    std::set<VarId> variables() const {
        std::set<VarId> out;
        for (auto& [w, c] : terms_)
            for (auto& [v, n] : w.multidegree().counts()) out.insert(v);
        return out;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const auto& d = terms_.begin()->first.multidegree();
        for (auto& [w, c] : terms_)
            if (!(w.multidegree() == d)) return false;
        return true;
    }
    bool is_multilinear() const {
        for (auto& [w, c] : terms_)
            if (!w.multidegree().is_multilinear()) return false;
        return is_homogeneous();
    }
    /// Multidegree of a homogeneous nonzero polynomial.
    Multidegree multidegree() const {
        if (terms_.empty()) return {};
        return terms_.begin()->first.multidegree();
    }

    /// Canonical rendering: terms in word order, "x*y - 2*y*x", "0" for zero.
    std::string str() const {
        return render([](const VarId& v, bool) { return v.name(); });
    }

    template <class LeafText>
    std::string render(const LeafText& leaf) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [w, c] : terms_) {
            bool neg = c < 0;
            Field mag = neg ? Field(-c) : c;
            if (first)
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            if (mag != 1) s += format_coefficient(mag) + "*";
            s += w.render_with(leaf);
            first = false;
        }
        return s;
    }

private:
    static std::string format_coefficient(const Field& c) {
        if constexpr (std::is_same_v<Field, Rational>)
            return format_rational(c);
        else
            return c.str();
    }

    Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;

template <class Field>
using Substitution = std::map<VarId, BasicPolynomial<Field>>;

namespace detail {
template <class Field>
BasicPolynomial<Field> substitute_word(const MagmaWord& w, const Substitution<Field>& sigma,
                                       std::map<MagmaWord, BasicPolynomial<Field>, WordLess>& memo) {
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    BasicPolynomial<Field> out;
    if (w.is_leaf()) {
        auto it = sigma.find(w.var());
        if (it == sigma.end()) throw MissingVariableError(w.var());
        out = it->second;
    } else {
        out = substitute_word(w.left(), sigma, memo) * substitute_word(w.right(), sigma, memo);
    }
    memo.emplace(w, out);
    return out;
}
}  // namespace detail

/// The algebra homomorphism extending sigma, applied to p.
template <class Field>
BasicPolynomial<Field> substitute(const BasicPolynomial<Field>& p, const Substitution<Field>& sigma) {
    std::map<MagmaWord, BasicPolynomial<Field>, WordLess> memo;
    BasicPolynomial<Field> out;
    for (auto& [w, c] : p.terms()) out += c * detail::substitute_word(w, sigma, memo);
    return out;
}

/// Substitution of words for variables (a monomial substitution).
template <class Field>
BasicPolynomial<Field> substitute_words(const BasicPolynomial<Field>& p,
                                        const std::map<VarId, MagmaWord>& sigma) {
    BasicPolynomial<Field> out;
    for (auto& [w, c] : p.terms())
        out.add_term(substitute_leaves(w,
                                       [&](const VarId& v) {
                                           auto it = sigma.find(v);
                                           if (it == sigma.end()) throw MissingVariableError(v);
                                           return it->second;
                                       }),
                     c);
    return out;
}

template <class Field>
std::map<Multidegree, BasicPolynomial<Field>> homogeneous_components(const BasicPolynomial<Field>& p) {
    std::map<Multidegree, BasicPolynomial<Field>> out;
    for (auto& [w, c] : p.terms()) out[w.multidegree()].add_term(w, c);
    return out;
}

/// A variable name derived from base that is not in taken; inserts it.
inline VarId fresh_variable(const std::string& base, std::set<VarId>& taken) {
    for (int i = 2;; ++i) {
        VarId v(base + "_" + std::to_string(i));
        if (taken.insert(v).second) return v;
    }
}

/// Full polarization of a homogeneous polynomial: every variable x of degree
/// k >= 2 is replaced by x + x_2 + ... + x_k and only the component linear
/// in each copy is kept. Returns one multilinear polynomial (none for p = 0).
template <class Field>
std::vector<BasicPolynomial<Field>> multilinearize(const BasicPolynomial<Field>& p) {
    if (!p.is_homogeneous()) throw Error("multilinearize requires a homogeneous polynomial");
    if (p.is_zero()) return {};
    BasicPolynomial<Field> cur = p;
    std::set<VarId> taken = p.variables();
    const Multidegree original = p.multidegree();
    for (auto& [x, k] : original.counts()) {
        if (k < 2) continue;
        Substitution<Field> sigma;
        for (auto& v : cur.variables()) sigma[v] = BasicPolynomial<Field>(MagmaWord::leaf(v));
        BasicPolynomial<Field> sum(MagmaWord::leaf(x));
        Multidegree target = cur.multidegree();
        target.add(x, 1 - k);
        for (int i = 1; i < k; ++i) {
            VarId copy = fresh_variable(x.name(), taken);
            sum += BasicPolynomial<Field>(MagmaWord::leaf(copy));
            target.add(copy, 1);
        }
        sigma[x] = sum;
        auto comps = homogeneous_components(substitute(cur, sigma));
        cur = comps[target];
    }
    return {cur};
}

}  // namespace varlab
