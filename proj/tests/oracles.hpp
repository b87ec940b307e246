#pragma once

// Slow, independent reference computations used only by the tests.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "varlab/tideal.hpp"

namespace oracle {

using namespace varlab;

/// All binary trees with the given leaves in left-to-right order.
inline std::vector<MagmaWord> trees_over(const std::vector<VarId>& leaves, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {MagmaWord::leaf(leaves[lo])};
    std::vector<MagmaWord> out;
    for (std::size_t mid = lo + 1; mid < hi; ++mid)
        for (auto& l : trees_over(leaves, lo, mid))
            for (auto& r : trees_over(leaves, mid, hi)) out.push_back(MagmaWord::node(l, r));
    return out;
}

/// Every word of multidegree d: every shape times every distinct leaf order.
inline std::set<std::string> brute_words(const Multidegree& d) {
    std::vector<VarId> leaves;
    for (auto& [v, c] : d.counts())
        for (int i = 0; i < c; ++i) leaves.push_back(v);
    std::set<std::string> out;
    std::sort(leaves.begin(), leaves.end());
    do {
        for (auto& w : trees_over(leaves, 0, leaves.size())) out.insert(w.str());
    } while (std::next_permutation(leaves.begin(), leaves.end()));
    return out;
}

/// Every word over vars with total degree between 1 and max_total.
inline std::vector<MagmaWord> words_up_to(const std::vector<VarId>& vars, int max_total) {
    std::map<int, std::vector<MagmaWord>> by_degree;
    for (auto& v : vars) by_degree[1].push_back(MagmaWord::leaf(v));
    for (int n = 2; n <= max_total; ++n)
        for (int k = 1; k < n; ++k)
            for (auto& l : by_degree[k])
                for (auto& r : by_degree[n - k]) by_degree[n].push_back(MagmaWord::node(l, r));
    std::vector<MagmaWord> out;
    for (auto& [n, ws] : by_degree) out.insert(out.end(), ws.begin(), ws.end());
    return out;
}

/// Fixed point of the naive closure of the laws of v inside the free algebra
/// on vars, truncated at total degree max_total: seeds are the components of
/// each identity after replacing every variable of degree k by a sum of k
/// fresh variables; the closure is under substituting words for variables and
/// multiplying by words on either side. One echelon basis per multidegree.
class NaiveClosure {
public:
    NaiveClosure(const VarietyPresentation& v, std::vector<VarId> vars, int max_total)
        : vars_(std::move(vars)), max_total_(max_total), words_(words_up_to(vars_, max_total)) {
        std::deque<Polynomial> work;
        for (auto& id : v.identities())
            for (auto& [d, comp] : homogeneous_components(id.polynomial()))
                for (auto& seed : split_variables(comp))
                    for (auto& inst : all_word_substitutions(seed)) push(inst, work);
        while (!work.empty()) {
            Polynomial p = work.front();
            work.pop_front();
            const int deg = p.multidegree().total();
            for (auto& w : words_) {
                if (deg + w.total_degree() > max_total_) continue;
                push(Polynomial(w) * p, work);
                push(p * Polynomial(w), work);
            }
            for (auto& inst : all_word_substitutions(p)) push(inst, work);
        }
    }

    /// Rows over enumerate_words(d); empty basis if nothing reached d.
    EchelonBasis<Rational> space(const Multidegree& d) const {
        auto it = spaces_.find(d);
        return it == spaces_.end() ? EchelonBasis<Rational>(enumerate_words(d).size()) : it->second;
    }

private:
    void push(const Polynomial& p, std::deque<Polynomial>& work) {
        if (p.is_zero()) return;
        const auto d = p.multidegree();
        if (d.total() > max_total_) return;
        auto [it, fresh] = spaces_.try_emplace(d, enumerate_words(d).size());
        auto coords = to_coordinates(p);
        if (it->second.contains(coords)) return;
        it->second.insert(coords);
        work.push_back(p);
    }

    /// Components of p after x -> x#1 + ... + x#k for each variable x of degree k.
    static std::vector<Polynomial> split_variables(const Polynomial& p) {
        Substitution<Rational> sigma;
        const auto deg = p.multidegree();
        for (auto& [x, k] : deg.counts()) {
            Polynomial sum;
            for (int i = 1; i <= k; ++i) sum += Polynomial::var("s" + x.name() + "_" + std::to_string(i));
            sigma[x] = sum;
        }
        std::vector<Polynomial> out;
        for (auto& [d, comp] : homogeneous_components(substitute(p, sigma))) out.push_back(comp);
        return out;
    }

    /// Every image of p under variable -> word with the result within bound.
    std::vector<Polynomial> all_word_substitutions(const Polynomial& p) const {
        const auto var_set = p.variables();
        std::vector<VarId> pv(var_set.begin(), var_set.end());
        const auto deg = p.multidegree();
        std::vector<Polynomial> out;
        std::map<VarId, MagmaWord> sigma;
        rec(p, pv, deg, 0, 0, sigma, out);
        return out;
    }

    void rec(const Polynomial& p, const std::vector<VarId>& pv, const Multidegree& deg, std::size_t i, int used,
             std::map<VarId, MagmaWord>& sigma, std::vector<Polynomial>& out) const {
        if (i == pv.size()) {
            out.push_back(substitute_words(p, sigma));
            return;
        }
        int remaining = 0;
        for (std::size_t j = i + 1; j < pv.size(); ++j) remaining += deg[pv[j]];
        for (auto& w : words_) {
            int total = used + deg[pv[i]] * w.total_degree();
            if (total + remaining > max_total_) continue;
            sigma.insert_or_assign(pv[i], w);
            rec(p, pv, deg, i + 1, total, sigma, out);
        }
        sigma.erase(pv[i]);
    }

    std::vector<VarId> vars_;
    int max_total_;
    std::vector<MagmaWord> words_;
    std::map<Multidegree, EchelonBasis<Rational>> spaces_;
};

inline bool same_row_space(const EchelonBasis<Rational>& a, const EchelonBasis<Rational>& b) {
    if (a.rank() != b.rank()) return false;
    for (auto& [p, row] : a.rows())
        if (!b.contains(row)) return false;
    return true;
}

}  // namespace oracle
