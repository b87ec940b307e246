#pragma once

// Finite-dimensional algebras given by structure constants, evaluation of
// words and polynomials, law checking, and a small fixture exhibiting a
// failed membership condition for a semidirect-product construction.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "varlab/variety.hpp"

namespace varlab {

using Element = std::vector<Rational>;

class StructureAlgebra {
public:
    StructureAlgebra() = default;
    explicit StructureAlgebra(std::vector<std::string> basis) : basis_(std::move(basis)) {
        std::set<std::string> seen;
        for (auto& b : basis_)
            if (!seen.insert(b).second) throw Error("duplicate basis element '" + b + "'");
        table_.assign(basis_.size() * basis_.size(), Element(basis_.size()));
    }

    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<std::string>& basis() const noexcept { return basis_; }
    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == name) return i;
        throw Error("unknown basis element '" + name + "'");
    }

    Element zero() const { return Element(dimension()); }
    Element unit(std::size_t i) const {
        Element e = zero();
        e.at(i) = 1;
        return e;
    }
    Element element(const std::string& name) const { return unit(index(name)); }

    /// Product of basis elements i and j.
    const Element& product(std::size_t i, std::size_t j) const { return table_.at(i * dimension() + j); }
    void set_product(std::size_t i, std::size_t j, Element value) {
        if (value.size() != dimension()) throw Error("product vector has wrong length");
        table_.at(i * dimension() + j) = std::move(value);
    }
    void set_product(const std::string& a, const std::string& b, const Element& value) {
        set_product(index(a), index(b), value);
    }

    Element multiply(const Element& u, const Element& v) const {
        Element out = zero();
        for (std::size_t i = 0; i < dimension(); ++i) {
            if (u[i] == 0) continue;
            for (std::size_t j = 0; j < dimension(); ++j) {
                if (v[j] == 0) continue;
                Rational c = u[i] * v[j];
                const auto& p = product(i, j);
                for (std::size_t k = 0; k < dimension(); ++k)
                    if (p[k] != 0) out[k] += c * p[k];
            }
        }
        return out;
    }

    /// "2*m - 1/2*q", "0" for zero.
    std::string format(const Element& e) const {
        Polynomial p;
        for (std::size_t i = 0; i < e.size(); ++i) p.add_term(MagmaWord::leaf(basis_.at(i)), e[i]);
        return p.str();
    }

    friend bool operator==(const StructureAlgebra&, const StructureAlgebra&) = default;

private:
    std::vector<std::string> basis_;
    std::vector<Element> table_;
};

inline bool is_zero(const Element& e) {
    return std::all_of(e.begin(), e.end(), [](const Rational& c) { return c == 0; });
}
inline Element operator+(Element a, const Element& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
    return a;
}
inline Element operator*(const Rational& c, Element a) {
    for (auto& x : a) x *= c;
    return a;
}

inline StructureAlgebra algebra_from_json(const nlohmann::json& j) {
    try {
        StructureAlgebra a(j.at("basis").get<std::vector<std::string>>());
        if (j.contains("table"))
            for (auto& [key, entry] : j.at("table").items()) {
                auto comma = key.find(',');
                if (comma == std::string::npos) throw Error("table key '" + key + "' is not of the form \"a,b\"");
                Element value = a.zero();
                for (auto& [c, coeff] : entry.items()) value[a.index(c)] = parse_rational(coeff.get<std::string>());
                a.set_product(key.substr(0, comma), key.substr(comma + 1), value);
            }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed algebra file: ") + e.what());
    }
}

/// Omits zero entries; keys ordered by basis position.
inline nlohmann::ordered_json algebra_to_json(const StructureAlgebra& a) {
    nlohmann::ordered_json j;
    j["basis"] = a.basis();
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t k = 0; k < a.dimension(); ++k) {
            const auto& p = a.product(i, k);
            if (is_zero(p)) continue;
            nlohmann::ordered_json entry = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < p.size(); ++c)
                if (p[c] != 0) entry[a.basis()[c]] = format_rational(p[c]);
            table[a.basis()[i] + "," + a.basis()[k]] = entry;
        }
    j["table"] = table;
    return j;
}

inline StructureAlgebra load_algebra(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open algebra file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("invalid JSON in " + path.string() + ": " + e.what());
    }
    return algebra_from_json(j);
}

using Assignment = std::map<VarId, Element>;

inline Element eval_word(const StructureAlgebra& a, const MagmaWord& w, const Assignment& asg) {
    if (w.is_leaf()) {
        auto it = asg.find(w.var());
        if (it == asg.end()) throw MissingVariableError(w.var());
        if (it->second.size() != a.dimension()) throw Error("assigned vector has wrong length");
        return it->second;
    }
    return a.multiply(eval_word(a, w.left(), asg), eval_word(a, w.right(), asg));
}

inline Element eval_polynomial(const StructureAlgebra& a, const Polynomial& p, const Assignment& asg) {
    Element out = a.zero();
    for (auto& [w, c] : p.terms()) out = out + c * eval_word(a, w, asg);
    return out;
}

struct LawCheck {
    bool holds = true;
    std::optional<std::string> failing_identity;
    std::vector<std::pair<VarId, std::string>> failing_tuple;  // variable -> basis element
    Element value;                                            // nonzero value at the tuple

    explicit operator bool() const noexcept { return holds; }
};

namespace detail {
/// Evaluates p on every assignment of basis elements to its variables.
inline std::optional<LawCheck> first_failure(const StructureAlgebra& a, const Polynomial& p) {
    const auto var_set = p.variables();
    const std::vector<VarId> vars(var_set.begin(), var_set.end());
    std::vector<std::size_t> pick(vars.size(), 0);
    if (a.dimension() == 0) return std::nullopt;
    for (;;) {
        Assignment asg;
        for (std::size_t i = 0; i < vars.size(); ++i) asg[vars[i]] = a.unit(pick[i]);
        Element value = eval_polynomial(a, p, asg);
        if (!is_zero(value)) {
            LawCheck c;
            c.holds = false;
            c.failing_identity = p.str();
            for (std::size_t i = 0; i < vars.size(); ++i) c.failing_tuple.emplace_back(vars[i], a.basis()[pick[i]]);
            c.value = std::move(value);
            return c;
        }
        // lexicographic: the last variable moves fastest
        std::size_t i = pick.size();
        while (i > 0 && ++pick[i - 1] == a.dimension()) pick[--i] = 0;
        if (i == 0) return std::nullopt;
    }
}
}  // namespace detail

/// Every multilinear identity of v vanishes on all basis tuples. Over the
/// rationals this is equivalent to v's laws holding in a. The original
/// identities are also evaluated on basis tuples so a failure is reported in
/// the user's own terms when possible.
inline LawCheck check_laws(const StructureAlgebra& a, const VarietyPresentation& v) {
    for (auto& id : v.identities())
        if (auto f = detail::first_failure(a, id.polynomial())) return *f;
    for (auto& m : v.multilinear_basis())
        if (auto f = detail::first_failure(a, m.polynomial())) return *f;
    return {};
}

/// A carrier algebra with a two-sided action of an acting algebra.
struct ActedAlgebra {
    StructureAlgebra acting;
    StructureAlgebra carrier;
    std::vector<Element> left_action;   // acting.dim * carrier.dim entries: b.x
    std::vector<Element> right_action;  // carrier.dim * acting.dim entries: x.b

    ActedAlgebra(StructureAlgebra b, StructureAlgebra x) : acting(std::move(b)), carrier(std::move(x)) {
        left_action.assign(acting.dimension() * carrier.dimension(), carrier.zero());
        right_action.assign(carrier.dimension() * acting.dimension(), carrier.zero());
    }
    void set_left(const std::string& b, const std::string& x, Element v) {
        left_action.at(acting.index(b) * carrier.dimension() + carrier.index(x)) = std::move(v);
    }
    void set_right(const std::string& x, const std::string& b, Element v) {
        right_action.at(carrier.index(x) * acting.dimension() + acting.index(b)) = std::move(v);
    }

    /// The algebra on acting + carrier with (b, x)(b', x') = (bb', bx' + xb' + xx').
    StructureAlgebra semidirect() const {
        std::vector<std::string> names = acting.basis();
        for (auto& n : carrier.basis()) {
            if (std::find(names.begin(), names.end(), n) != names.end())
                throw Error("acting and carrier bases share the name '" + n + "'");
            names.push_back(n);
        }
        StructureAlgebra s(names);
        const std::size_t nb = acting.dimension(), nx = carrier.dimension();
        auto embed = [&](const Element& e, std::size_t offset) {
            Element out = s.zero();
            for (std::size_t i = 0; i < e.size(); ++i) out[offset + i] = e[i];
            return out;
        };
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j) s.set_product(i, j, embed(acting.product(i, j), 0));
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nx; ++j) {
                s.set_product(i, nb + j, embed(left_action[i * nx + j], nb));
                s.set_product(nb + j, i, embed(right_action[j * nb + i], nb));
            }
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < nx; ++j) s.set_product(nb + i, nb + j, embed(carrier.product(i, j), nb));
        return s;
    }
};

/// Commutative algebras with all triple products zero.
inline VarietyPresentation gray_variety() {
    return VarietyPresentation::from_strings("comm-nil3", {"x*y - y*x", "x*(y*z)", "(x*y)*z"});
}

/// M = span{m, p, q}, mp = pm = q; with mutate the two products are 0.
inline StructureAlgebra gray_m_algebra(bool mutate = false) {
    StructureAlgebra M({"m", "p", "q"});
    if (!mutate) {
        M.set_product("m", "p", M.element("q"));
        M.set_product("p", "m", M.element("q"));
    }
    return M;
}

struct GrayReport {
    StructureAlgebra B, X, M;
    ActedAlgebra action;
    bool laws_B_acting_on_X = false;
    bool laws_M = false;
    bool g_is_homomorphism = false;
    Element f_value;   // f(0, b) = 0x + bx in X
    Element g_of_f;    // g(f(0, b)) in M
    Element g_y;       // g(y)
    Element computed;  // g(y) * p
    Element required;  // value forced by the trivial action on M
    bool obstruction = false;
    std::string verdict;
    std::vector<std::string> notes;
};

/// B = span{b, b2} with bb = b2, X = span{x, y} with zero products and
/// bx = xb = y, M as in gray_m_algebra with trivial action, g(x) = g(y) = m.
inline GrayReport gray_counterexample(bool mutate = false) {
    StructureAlgebra B({"b", "b2"});
    B.set_product("b", "b", B.element("b2"));
    StructureAlgebra X({"x", "y"});
    ActedAlgebra act(B, X);
    act.set_left("b", "x", X.element("y"));
    act.set_right("x", "b", X.element("y"));
    StructureAlgebra M = gray_m_algebra(mutate);

    GrayReport r{B, X, M, act, false, false, false, {}, {}, {}, {}, {}, false, "", {}};
    auto V = gray_variety();
    r.laws_B_acting_on_X = check_laws(act.semidirect(), V).holds;
    r.laws_M = check_laws(M, V).holds;

    // g on the basis of X, extended linearly.
    std::vector<Element> g_images{M.element("m"), M.element("m")};
    auto g = [&](const Element& e) {
        Element out = M.zero();
        for (std::size_t i = 0; i < e.size(); ++i) out = out + e[i] * g_images[i];
        return out;
    };
    r.g_is_homomorphism = true;
    for (std::size_t i = 0; i < X.dimension(); ++i)
        for (std::size_t j = 0; j < X.dimension(); ++j)
            if (g(X.product(i, j)) != M.multiply(g_images[i], g_images[j])) r.g_is_homomorphism = false;

    // f(n, b) = n x + b x at n = 0.
    r.f_value = Rational(0) * X.element("x") + act.left_action[B.index("b") * X.dimension() + X.index("x")];
    r.g_of_f = g(r.f_value);
    r.g_y = g(X.element("y"));
    r.computed = M.multiply(r.g_y, M.element("p"));
    r.required = M.zero();
    r.obstruction = r.computed != r.required;
    r.verdict = r.obstruction ? "counterexample confirmed" : "no obstruction";
    r.notes = {
        "scalars are exact rationals; all structure constants are integers and the inequality is characteristic-free",
        "instantiated condition: g(y)*p must equal the value forced by the trivial B-action on M, which is 0",
        "the displayed factor n in g(y)*n is read as the basis element p",
    };
    if (mutate) r.notes.push_back("mutated fixture: mp = pm = 0");
    return r;
}

/// A uniformly random element with small integer coordinates.
inline Element random_element(const StructureAlgebra& a, std::mt19937_64& rng, int range = 5) {
    std::uniform_int_distribution<int> dist(-range, range);
    Element e = a.zero();
    for (auto& c : e) c = dist(rng);
    return e;
}

}  // namespace varlab
