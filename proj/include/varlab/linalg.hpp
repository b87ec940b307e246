#pragma once

// Sparse exact linear algebra: an incremental reduced row-echelon basis,
// kernels of linear maps, and affine system solving.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "varlab/scalar.hpp"

namespace varlab {

/// Sparse vector: (column, value) pairs, sorted by column, no zero values.
template <class Field>
using SparseVec = std::vector<std::pair<std::size_t, Field>>;

template <class Field>
SparseVec<Field> axpy(const SparseVec<Field>& y, const Field& a, const SparseVec<Field>& x) {
    // y + a*x
    SparseVec<Field> out;
    out.reserve(y.size() + x.size());
    auto i = y.begin();
    auto j = x.begin();
    while (i != y.end() || j != x.end()) {
        if (j == x.end() || (i != y.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == y.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Field v = i->second + a * j->second;
            if (v != 0) out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class Field>
std::optional<Field> entry(const SparseVec<Field>& v, std::size_t col) {
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it == v.end() || it->first != col) return std::nullopt;
    return it->second;
}

/// Row space of a matrix kept in reduced row-echelon form. The pivot of a
/// row is its smallest column, so smaller columns are eliminated first.
template <class Field>
class EchelonBasis {
public:
    using Vec = SparseVec<Field>;

    explicit EchelonBasis(std::size_t columns = 0) : columns_(columns) {}

    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Reduces v modulo the row space. The result has no entries at pivots.
    Vec reduce(Vec v) const {
        // Rows are fully reduced, so subtracting one row never reintroduces
        // another pivot column; one pass over v's pivot entries suffices.
        std::vector<std::pair<std::size_t, Field>> hits;
        for (auto& [c, x] : v)
            if (rows_.count(c)) hits.emplace_back(c, x);
        for (auto& [c, x] : hits) v = axpy<Field>(v, -x, rows_.at(c));
        return v;
    }

    /// Adds v to the row space; returns true if the rank grew.
    bool insert(Vec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        std::size_t pivot = v.front().first;
        Field lead = v.front().second;
        if (lead != 1)
            for (auto& e : v) e.second /= lead;
        for (auto& [p, row] : rows_)
            if (auto x = entry(row, pivot)) row = axpy<Field>(row, -*x, v);
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    bool contains(const Vec& v) const { return reduce(v).empty(); }
    bool is_pivot(std::size_t c) const { return rows_.count(c) != 0; }

    /// Rows in ascending pivot order.
    const std::map<std::size_t, Vec>& rows() const noexcept { return rows_; }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (auto& [p, r] : rows_) out.push_back(p);
        return out;
    }
    std::vector<std::size_t> non_pivots() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < columns_; ++c)
            if (!rows_.count(c)) out.push_back(c);
        return out;
    }

private:
    std::size_t columns_;
    std::map<std::size_t, Vec> rows_;
};

/// Kernel of the linear map sending unit vector i to images[i], returned as
/// the reduced row-echelon basis of the kernel (vectors over the domain).
template <class Field>
std::vector<SparseVec<Field>> kernel_basis(const std::vector<SparseVec<Field>>& images,
                                           std::size_t codomain_dim) {
    // Row-reduce [image | unit] with image columns first.
    const std::size_t n = images.size();
    EchelonBasis<Field> aug(codomain_dim + n);
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec<Field> row = images[i];
        row.emplace_back(codomain_dim + i, Field(1));
        aug.insert(std::move(row));
    }
    EchelonBasis<Field> ker(n);
    for (auto& [p, row] : aug.rows()) {
        if (p < codomain_dim) continue;
        SparseVec<Field> k;
        for (auto& [c, x] : row) k.emplace_back(c - codomain_dim, x);
        ker.insert(std::move(k));
    }
    std::vector<SparseVec<Field>> out;
    for (auto& [p, row] : ker.rows()) out.push_back(row);
    return out;
}

template <class Field>
struct AffineSolution {
    bool solvable = false;
    std::vector<Field> particular;               // valid when solvable
    std::vector<std::vector<Field>> homogeneous;  // basis of the solution space of A x = 0
};

/// Solves A x = b where the columns of A are given as sparse vectors of a
/// common ambient space. Free variables are set to zero in the particular
/// solution; pivots follow column order.
template <class Field>
AffineSolution<Field> solve_affine(const std::vector<SparseVec<Field>>& columns,
                                   const SparseVec<Field>& rhs, std::size_t rows) {
    const std::size_t n = columns.size();
    // Transpose to equation rows over n+1 columns (last is rhs).
    std::vector<SparseVec<Field>> eq(rows);
    for (std::size_t j = 0; j < n; ++j)
        for (auto& [r, x] : columns[j]) eq[r].emplace_back(j, x);
    for (auto& [r, x] : rhs) eq[r].emplace_back(n, x);
    EchelonBasis<Field> rref(n + 1);
    for (auto& e : eq) rref.insert(e);

    AffineSolution<Field> sol;
    sol.solvable = !rref.is_pivot(n);
    if (sol.solvable) {
        sol.particular.assign(n, Field(0));
        for (auto& [p, row] : rref.rows())
            if (auto b = entry(row, n)) sol.particular[p] = *b;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (rref.is_pivot(f)) continue;
        std::vector<Field> v(n, Field(0));
        v[f] = 1;
        for (auto& [p, row] : rref.rows())
            if (auto x = entry(row, f)) v[p] = -*x;
        sol.homogeneous.push_back(std::move(v));
    }
    return sol;
}

}  // namespace varlab
