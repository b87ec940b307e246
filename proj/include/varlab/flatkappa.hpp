#pragma once

// Truncated presentations of the kernel B♭X of the split projection
// B + X -> B inside a relatively free algebra, the coproduct B♭X + B♭Y of
// two such presentations, and the degreewise comparison map
//
//     kappa : B♭X + B♭Y -> B♭(X + Y)
//
// which sends both copies b1, b2 of the generators of B to b. Everything is
// graded by ambient multidegree (over b1, b2, x, y on the domain side and
// over b, x, y on the codomain side), so each component is a finite exact
// linear algebra problem.

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "varlab/tideal.hpp"

namespace varlab {

class BoundExceededError : public Error {
public:
    using Error::Error;
};

/// Total-degree bound plus optional per-variable caps.
struct DegreeBound {
    int max_total = 3;
    std::map<VarId, int> caps;

    bool admits(const Multidegree& d) const {
        if (d.total() > max_total) return false;
        for (auto& [v, c] : d.counts())
            if (auto it = caps.find(v); it != caps.end() && c > it->second) return false;
        return true;
    }
    int cap(const VarId& v) const {
        auto it = caps.find(v);
        return it == caps.end() ? max_total : std::min(max_total, it->second);
    }
};

struct AmbientAlphabet {
    std::vector<VarId> b_vars;
    std::vector<VarId> x_vars;

    AmbientAlphabet(std::vector<VarId> b, std::vector<VarId> x) : b_vars(std::move(b)), x_vars(std::move(x)) {
        if (x_vars.empty()) throw Error("ambient alphabet needs at least one X variable");
        std::set<VarId> seen;
        for (auto& v : b_vars)
            if (!seen.insert(v).second) throw Error("duplicate variable " + v.name());
        for (auto& v : x_vars)
            if (!seen.insert(v).second) throw Error("B and X variables must be disjoint (" + v.name() + ")");
    }

    std::vector<VarId> all() const {
        auto out = b_vars;
        out.insert(out.end(), x_vars.begin(), x_vars.end());
        return out;
    }
    int x_count(const Multidegree& d) const {
        int n = 0;
        for (auto& v : x_vars) n += d[v];
        return n;
    }
};

/// All multidegrees over vars admitted by bound (the zero one excluded),
/// ordered by total degree, then lexicographically.
inline std::vector<Multidegree> multidegrees_within(const std::vector<VarId>& vars, const DegreeBound& bound) {
    std::vector<Multidegree> out{Multidegree{}};
    for (auto& v : vars) {
        std::vector<Multidegree> next;
        for (auto& d : out)
            for (int k = 0; k <= bound.cap(v) && d.total() + k <= bound.max_total; ++k) {
                Multidegree e = d;
                e.add(v, k);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& d) { return d.empty(); }), out.end());
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) {
        return a.total() != b.total() ? a.total() < b.total() : a < b;
    });
    return out;
}

struct KernelGenerator {
    VarId id;
    MagmaWord representative;  // word over the ambient alphabet
    Multidegree ambient_multidegree;

    bool is_variable() const { return representative.is_leaf(); }
    /// "x" for a variable generator, "g[y*b2]" otherwise.
    std::string display() const {
        return is_variable() ? representative.var().name() : "g[" + representative.str() + "]";
    }
};

/// g_left * g_right = rewrite, where rewrite is a combination of generators.
struct StructureRelation {
    std::size_t left, right;
    Polynomial rewrite;  // over generator ids, linear
    Multidegree ambient_multidegree;
};

class KernelPresentation {
public:
    KernelPresentation(VarietyPresentation v, AmbientAlphabet alphabet, DegreeBound bound)
        : variety_(std::move(v)), alphabet_(std::move(alphabet)), bound_(std::move(bound)) {}

    const VarietyPresentation& variety() const noexcept { return variety_; }
    const AmbientAlphabet& alphabet() const noexcept { return alphabet_; }
    const DegreeBound& bound() const noexcept { return bound_; }
    const std::vector<KernelGenerator>& generators() const noexcept { return generators_; }
    const std::vector<StructureRelation>& relations() const noexcept { return relations_; }

    const KernelGenerator* find(const VarId& id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &generators_[it->second];
    }
    /// Generators of one ambient multidegree, in quotient-basis order.
    std::vector<std::size_t> generators_at(const Multidegree& d) const {
        auto it = by_degree_.find(d);
        return it == by_degree_.end() ? std::vector<std::size_t>{} : it->second;
    }
    Polynomial relation_polynomial(const StructureRelation& r) const {
        Polynomial p(MagmaWord::node(MagmaWord::leaf(generators_[r.left].id),
                                     MagmaWord::leaf(generators_[r.right].id)));
        return p - r.rewrite;
    }

private:
    friend KernelPresentation flat_basis(const VarietyPresentation&, const AmbientAlphabet&,
                                         const DegreeBound&, const std::string&, ConsequenceCache&);

    VarietyPresentation variety_;
    AmbientAlphabet alphabet_;
    DegreeBound bound_;
    std::vector<KernelGenerator> generators_;
    std::vector<StructureRelation> relations_;
    std::map<VarId, std::size_t> by_id_;
    std::map<Multidegree, std::vector<std::size_t>> by_degree_;
};

/// Generators: the quotient-basis words of every admissible ambient
/// multidegree with at least one X variable. Relations: the rewrite of every
/// product of two generators whose multidegree is within bound. Composite
/// generators are named "g<tag>_<n>".
inline KernelPresentation flat_basis(const VarietyPresentation& v, const AmbientAlphabet& alphabet,
                                     const DegreeBound& bound, const std::string& tag = "",
                                     ConsequenceCache& cache = default_cache()) {
    KernelPresentation P(v, alphabet, bound);
    std::size_t composite = 0;
    for (const auto& d : multidegrees_within(alphabet.all(), bound)) {
        if (alphabet.x_count(d) == 0) continue;
        for (const auto& w : quotient_basis(v, d, cache)) {
            VarId id = w.is_leaf() ? w.var() : [&] {
                char buf[32];
                std::snprintf(buf, sizeof buf, "g%s_%03zu", tag.c_str(), composite++);
                return VarId(buf);
            }();
            P.by_id_.emplace(id, P.generators_.size());
            P.by_degree_[d].push_back(P.generators_.size());
            P.generators_.push_back({id, w, d});
        }
    }
    const auto& gens = P.generators_;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) {
            Multidegree e = gens[i].ambient_multidegree + gens[j].ambient_multidegree;
            if (!bound.admits(e)) continue;
            auto coords = reduce(v, e, Polynomial(MagmaWord::node(gens[i].representative, gens[j].representative)),
                                 cache);
            const auto targets = P.generators_at(e);
            Polynomial rewrite;
            for (std::size_t k = 0; k < coords.size(); ++k)
                rewrite.add_term(MagmaWord::leaf(gens[targets[k]].id), coords[k]);
            P.relations_.push_back({i, j, std::move(rewrite), std::move(e)});
        }
    return P;
}

/// A generator word together with where it lives.
struct GeneratorIndex {
    std::map<VarId, const KernelGenerator*> gens;
    std::map<VarId, Multidegree> ambient;

    void add(const KernelPresentation& P) {
        for (auto& g : P.generators()) {
            gens.emplace(g.id, &g);
            ambient.emplace(g.id, g.ambient_multidegree);
        }
    }
    Multidegree ambient_of(const Multidegree& generator_degree) const {
        Multidegree out;
        for (auto& [g, n] : generator_degree.counts())
            for (int i = 0; i < n; ++i) out += ambient.at(g);
        return out;
    }
    /// Generator multidegrees m with ambient_of(m) == target (m may be empty
    /// when target is).
    std::vector<Multidegree> generator_degrees(const Multidegree& target) const {
        std::vector<Multidegree> out;
        std::vector<std::pair<VarId, Multidegree>> list(ambient.begin(), ambient.end());
        Multidegree partial;
        rec(list, 0, target, partial, out);
        return out;
    }
    std::string render(const Polynomial& p) const {
        return p.render([&](const VarId& v, bool nested) {
            auto it = gens.find(v);
            if (it == gens.end() || it->second->is_variable()) return v.name();
            return nested ? "(" + it->second->display() + ")" : it->second->display();
        });
    }
    /// Replace every generator leaf by its representative word.
    MagmaWord expand(const MagmaWord& w, const std::map<VarId, VarId>& rename) const {
        return substitute_leaves(w, [&](const VarId& g) {
            return substitute_leaves(gens.at(g)->representative, [&](const VarId& a) {
                auto it = rename.find(a);
                return MagmaWord::leaf(it == rename.end() ? a : it->second);
            });
        });
    }

private:
    static void rec(const std::vector<std::pair<VarId, Multidegree>>& list, std::size_t i,
                    const Multidegree& remaining, Multidegree& partial, std::vector<Multidegree>& out) {
        if (remaining.empty()) {
            out.push_back(partial);
            return;
        }
        if (i == list.size()) return;
        const auto& [g, amb] = list[i];
        Multidegree rem = remaining;
        int taken = 0;
        rec(list, i + 1, rem, partial, out);
        while (amb.divides(rem)) {
            rem -= amb;
            partial.add(g, 1);
            ++taken;
            rec(list, i + 1, rem, partial, out);
        }
        partial.add(g, -taken);
    }
};

/// One ambient-multidegree component of the coproduct of two presentations:
/// generator words modulo the variety's laws and both structure tables.
struct CoproductComponent {
    Multidegree ambient;
    std::vector<MagmaWord> words;  // over generator ids, sorted by compare_words
    EchelonBasis<Rational> relations;
    std::vector<Polynomial> relation_instances;  // every generated instance

    std::size_t dimension() const { return words.size() - relations.rank(); }
    std::vector<MagmaWord> basis() const {
        std::vector<MagmaWord> out;
        for (auto c : relations.non_pivots()) out.push_back(words[c]);
        return out;
    }
    SparseVec<Rational> coordinates(const Polynomial& p) const {
        SparseVec<Rational> v;
        for (auto& [w, c] : p.terms()) {
            auto it = std::lower_bound(words.begin(), words.end(), w, WordLess{});
            if (it == words.end() || !(*it == w)) throw MultidegreeMismatchError("word " + w.str() + " outside component");
            v.emplace_back(static_cast<std::size_t>(it - words.begin()), c);
        }
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return v;
    }
    /// True iff p is zero in the component.
    bool is_zero(const Polynomial& p) const { return relations.contains(coordinates(p)); }
};

inline Multidegree restrict_to(const Multidegree& d, const std::vector<VarId>& vars) {
    Multidegree out;
    for (auto& v : vars) out.add(v, d[v]);
    return out;
}

/// Requires P1 and P2 over disjoint alphabets and the same variety.
inline CoproductComponent coproduct_component(const VarietyPresentation& v, const KernelPresentation& P1,
                                              const KernelPresentation& P2, const Multidegree& D,
                                              ConsequenceCache& cache = default_cache()) {
    for (const auto* P : {&P1, &P2}) {
        auto part = restrict_to(D, P->alphabet().all());
        if (!P->bound().admits(part))
            throw BoundExceededError("component {" + D.str() + "} needs relations beyond the presentation bound");
    }
    std::set<VarId> known;
    for (auto* P : {&P1, &P2})
        for (auto& a : P->alphabet().all()) known.insert(a);
    for (auto& [a, c] : D.counts())
        if (!known.count(a)) throw Error("variable " + a.name() + " is not in either ambient alphabet");

    GeneratorIndex index;
    index.add(P1);
    index.add(P2);

    CoproductComponent comp{D, {}, EchelonBasis<Rational>(0), {}};
    const auto degrees = index.generator_degrees(D);
    for (auto& m : degrees)
        for (auto& w : enumerate_words(m)) comp.words.push_back(w);
    std::sort(comp.words.begin(), comp.words.end(), WordLess{});
    comp.relations = EchelonBasis<Rational>(comp.words.size());

    auto add = [&](const Polynomial& p) {
        if (p.is_zero()) return;
        comp.relation_instances.push_back(p);
        comp.relations.insert(comp.coordinates(p));
    };
    // Laws of the variety, applied to generator words.
    for (auto& m : degrees)
        for (auto& row : consequence_space(v, m, cache)->rows()) add(row);
    // Structure relations of both factors, in every context.
    for (const auto* P : {&P1, &P2})
        for (auto& r : P->relations()) {
            if (!r.ambient_multidegree.divides(D)) continue;
            Polynomial rel = P->relation_polynomial(r);
            for (auto& m : index.generator_degrees(D - r.ambient_multidegree))
                for (auto& c : enumerate_contexts(m)) add(c.plug(rel));
        }
    return comp;
}

struct ComparisonRow {
    Multidegree multidegree;  // codomain (merged) multidegree
    std::size_t dim_domain = 0;
    std::size_t dim_codomain = 0;
    std::size_t rank = 0;
    bool injective = false;
    bool surjective = false;
    bool well_defined = false;          // every domain relation maps to 0
    bool witnesses_certified = false;   // each witness nonzero in domain, zero in codomain
    std::vector<Polynomial> kernel_witnesses;  // over generator words
    std::vector<MagmaWord> missing;            // codomain basis words not in the image
    std::vector<std::string> kernel_witness_text;
    std::vector<std::string> kernel_witness_ambient;  // before merging b1, b2
};

struct ComparisonReport {
    std::string variety;
    DegreeBound bound;
    std::vector<ComparisonRow> components;

    bool injective() const {
        return std::all_of(components.begin(), components.end(), [](auto& r) { return r.injective; });
    }
    bool surjective() const {
        return std::all_of(components.begin(), components.end(), [](auto& r) { return r.surjective; });
    }
    std::string verdict() const {
        if (injective() && surjective()) return "iso up to bound";
        std::string s;
        if (!injective()) s = "not injective";
        if (!surjective()) s += std::string(s.empty() ? "" : ", ") + "not surjective";
        return s;
    }
    const ComparisonRow* find(const Multidegree& d) const {
        for (auto& r : components)
            if (r.multidegree == d) return &r;
        return nullptr;
    }
};

/// The setting of a comparison: the codomain alphabet {b..} + X + Y, two
/// presentations over ({b..1}, X) and ({b..2}, Y), and the merge b_i -> b.
class KappaSetting {
public:
    KappaSetting(const VarietyPresentation& v, std::size_t b_count, std::size_t x_count, std::size_t y_count,
                 DegreeBound bound, ConsequenceCache& cache = default_cache())
        : variety_(v), bound_(std::move(bound)), cache_(&cache) {
        if (x_count == 0 || y_count == 0) throw Error("X and Y need at least one generator each");
        static const std::string b_letters = "bcdefhijklmnopqrstuvw";
        if (b_count > b_letters.size()) throw Error("too many B generators");
        std::vector<VarId> b1, b2;
        for (std::size_t i = 0; i < b_count; ++i) {
            std::string n(1, b_letters[i]);
            b_.emplace_back(n);
            b1.emplace_back(n + "1");
            b2.emplace_back(n + "2");
            merge_[b1.back()] = b_.back();
            merge_[b2.back()] = b_.back();
        }
        for (std::size_t i = 0; i < x_count; ++i) x_.emplace_back(i == 0 ? "x" : "x_" + std::to_string(i + 1));
        for (std::size_t i = 0; i < y_count; ++i) y_.emplace_back(i == 0 ? "y" : "y_" + std::to_string(i + 1));

        auto copy_bound = [&](const std::vector<VarId>& copies) {
            DegreeBound b{bound_.max_total, {}};
            for (auto& [var, cap] : bound_.caps) {
                for (auto& c : copies)
                    if (merge_.at(c) == var) b.caps[c] = cap;
                b.caps[var] = cap;
            }
            return b;
        };
        P1_ = std::make_unique<KernelPresentation>(flat_basis(v, AmbientAlphabet(b1, x_), copy_bound(b1), "1", cache));
        P2_ = std::make_unique<KernelPresentation>(flat_basis(v, AmbientAlphabet(b2, y_), copy_bound(b2), "2", cache));
        index_.add(*P1_);
        index_.add(*P2_);
    }

    const VarietyPresentation& variety() const noexcept { return variety_; }
    const KernelPresentation& first() const noexcept { return *P1_; }
    const KernelPresentation& second() const noexcept { return *P2_; }
    const GeneratorIndex& index() const noexcept { return index_; }
    const std::map<VarId, VarId>& merge() const noexcept { return merge_; }
    const DegreeBound& bound() const noexcept { return bound_; }
    std::vector<VarId> codomain_variables() const {
        auto out = b_;
        out.insert(out.end(), x_.begin(), x_.end());
        out.insert(out.end(), y_.begin(), y_.end());
        return out;
    }
    int xy_count(const Multidegree& d) const {
        int n = 0;
        for (auto& v : x_) n += d[v];
        for (auto& v : y_) n += d[v];
        return n;
    }

    /// Codomain multidegrees of B♭(X+Y) within the bound.
    std::vector<Multidegree> components() const {
        std::vector<Multidegree> out;
        for (auto& d : multidegrees_within(codomain_variables(), bound_))
            if (xy_count(d) > 0) out.push_back(d);
        return out;
    }

    /// Domain multidegrees mapping onto d: every split of each b count into b1 + b2.
    std::vector<Multidegree> domain_multidegrees(const Multidegree& d) const {
        std::vector<Multidegree> out{Multidegree{}};
        for (auto& [var, c] : d.counts()) {
            std::vector<Multidegree> next;
            bool is_b = std::find(b_.begin(), b_.end(), var) != b_.end();
            for (auto& partial : out) {
                if (!is_b) {
                    Multidegree e = partial;
                    e.add(var, c);
                    next.push_back(std::move(e));
                    continue;
                }
                for (int k = 0; k <= c; ++k) {
                    Multidegree e = partial;
                    e.add(VarId(var.name() + "1"), k);
                    e.add(VarId(var.name() + "2"), c - k);
                    next.push_back(std::move(e));
                }
            }
            out = std::move(next);
        }
        return out;
    }

    /// Image of a generator word: expand generators, merge b1, b2 -> b.
    Polynomial kappa(const Polynomial& domain_element) const {
        Polynomial out;
        for (auto& [w, c] : domain_element.terms()) out.add_term(index_.expand(w, merge_), c);
        return out;
    }
    /// Same, but keeping b1 and b2 apart.
    Polynomial expand_unmerged(const Polynomial& domain_element) const {
        Polynomial out;
        for (auto& [w, c] : domain_element.terms()) out.add_term(index_.expand(w, {}), c);
        return out;
    }

    struct ComponentMap {
        std::vector<CoproductComponent> parts;
        std::vector<std::pair<std::size_t, MagmaWord>> domain_basis;  // (part, word)
        std::vector<SparseVec<Rational>> images;                      // over codomain quotient basis
        std::shared_ptr<const ConsequenceSpace> codomain;
    };

    /// Coproduct components over d and the matrix of kappa on their bases.
    ComponentMap component_map(const Multidegree& d) const {
        ComponentMap cm;
        cm.codomain = consequence_space(variety_, d, *cache_);
        for (auto& D : domain_multidegrees(d)) {
            cm.parts.push_back(coproduct_component(variety_, *P1_, *P2_, D, *cache_));
            for (auto& w : cm.parts.back().basis()) {
                cm.domain_basis.emplace_back(cm.parts.size() - 1, w);
                cm.images.push_back(image_coordinates(cm, Polynomial(w)));
            }
        }
        return cm;
    }

    SparseVec<Rational> image_coordinates(const ComponentMap& cm, const Polynomial& x) const {
        auto r = cm.codomain->reduce(kappa(x));
        SparseVec<Rational> out;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) out.emplace_back(i, r[i]);
        return out;
    }

    /// Is x (a combination of generator words over d) zero in the domain?
    bool domain_is_zero(const ComponentMap& cm, const Polynomial& x) const {
        std::map<std::size_t, Polynomial> split;
        for (auto& [w, c] : x.terms()) {
            bool placed = false;
            for (std::size_t i = 0; i < cm.parts.size() && !placed; ++i) {
                const auto& ws = cm.parts[i].words;
                if (std::binary_search(ws.begin(), ws.end(), w, WordLess{})) {
                    split[i].add_term(w, c);
                    placed = true;
                }
            }
            if (!placed) throw MultidegreeMismatchError("word " + w.str() + " is not in this component");
        }
        for (auto& [i, p] : split)
            if (!cm.parts[i].is_zero(p)) return false;
        return true;
    }

    ComparisonRow kappa_on_component(const Multidegree& d) const {
        auto cm = component_map(d);
        ComparisonRow row;
        row.multidegree = d;
        row.dim_domain = cm.domain_basis.size();
        row.dim_codomain = cm.codomain->quotient_dimension();

        EchelonBasis<Rational> image(row.dim_codomain);
        for (auto& v : cm.images) image.insert(v);
        row.rank = image.rank();
        row.injective = row.rank == row.dim_domain;
        row.surjective = row.rank == row.dim_codomain;
        auto qb = cm.codomain->quotient_basis();
        for (std::size_t i = 0; i < qb.size(); ++i)
            if (!image.contains({{i, Rational(1)}})) row.missing.push_back(qb[i]);

        row.well_defined = true;
        for (auto& part : cm.parts)
            for (auto& rel : part.relation_instances)
                if (!cm.codomain->contains(kappa(rel))) row.well_defined = false;

        row.witnesses_certified = true;
        for (auto& k : kernel_basis<Rational>(cm.images, row.dim_codomain)) {
            Polynomial w;
            for (auto& [i, c] : k) w.add_term(cm.domain_basis[i].second, c);
            bool nonzero_in_domain = !domain_is_zero(cm, w);
            bool zero_in_codomain = cm.codomain->contains(kappa(w));
            if (!nonzero_in_domain || !zero_in_codomain) row.witnesses_certified = false;
            row.kernel_witness_text.push_back(index_.render(w));
            row.kernel_witness_ambient.push_back(expand_unmerged(w).str());
            row.kernel_witnesses.push_back(std::move(w));
        }
        return row;
    }

    ComparisonReport analyze() const {
        ComparisonReport rep{variety_.name(), bound_, {}};
        for (auto& d : components()) rep.components.push_back(kappa_on_component(d));
        return rep;
    }

private:
    VarietyPresentation variety_;
    DegreeBound bound_;
    ConsequenceCache* cache_;
    std::vector<VarId> b_, x_, y_;
    std::map<VarId, VarId> merge_;
    std::unique_ptr<KernelPresentation> P1_, P2_;
    GeneratorIndex index_;
};

struct KappaOptions {
    std::size_t b_count = 1, x_count = 1, y_count = 1;
    DegreeBound bound{};
};

inline ComparisonReport analyze_kappa(const VarietyPresentation& v, const KappaOptions& opt = {},
                                      ConsequenceCache& cache = default_cache()) {
    return KappaSetting(v, opt.b_count, opt.x_count, opt.y_count, opt.bound, cache).analyze();
}

}  // namespace varlab
