#pragma once

// Degreewise T-ideals. The multidegree-d component of the T-ideal of a
// variety is spanned by c[phi(w1, ..., wk)] where phi is a multilinear
// identity of the presentation, the wi are words and c is a one-hole
// context; over a field of characteristic 0 this is the full component.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "varlab/linalg.hpp"
#include "varlab/poly.hpp"
#include "varlab/variety.hpp"

namespace varlab {

class MultidegreeMismatchError : public Error {
public:
    using Error::Error;
};

/// A word with exactly one hole, stored as the path from the root to the
/// hole: each step records which side the hole descends into and the
/// sibling word on the other side.
class Context {
public:
    enum class Side { Left, Right };  // side of the node containing the hole
    struct Step {
        Side side;
        MagmaWord sibling;
    };

    Context() = default;  // the bare hole

    Context wrap(Side side, const MagmaWord& sibling) const {
        Context c;
        c.path_.reserve(path_.size() + 1);
        c.path_.push_back({side, sibling});
        c.path_.insert(c.path_.end(), path_.begin(), path_.end());
        c.degree_ = degree_ + sibling.multidegree();
        return c;
    }

    MagmaWord plug(const MagmaWord& w) const {
        MagmaWord cur = w;
        for (auto it = path_.rbegin(); it != path_.rend(); ++it)
            cur = it->side == Side::Left ? MagmaWord::node(cur, it->sibling)
                                         : MagmaWord::node(it->sibling, cur);
        return cur;
    }

    template <class Field>
    BasicPolynomial<Field> plug(const BasicPolynomial<Field>& p) const {
        BasicPolynomial<Field> out;
        for (auto& [w, c] : p.terms()) out.add_term(plug(w), c);
        return out;
    }

    bool is_hole() const noexcept { return path_.empty(); }
    const Multidegree& multidegree() const noexcept { return degree_; }
    const std::vector<Step>& path() const noexcept { return path_; }

private:
    std::vector<Step> path_;
    Multidegree degree_;
};

/// All contexts whose non-hole leaves have multidegree f. Memoized.
inline const std::vector<Context>& enumerate_contexts(const Multidegree& f) {
    static std::mutex mu;
    static std::map<Multidegree, std::shared_ptr<const std::vector<Context>>> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(f); it != memo.end()) return *it->second;
    }
    std::vector<Context> out;
    if (f.empty()) {
        out.emplace_back();
    } else {
        for (const auto& sib_deg : sub_multidegrees(f)) {
            const auto& inner = enumerate_contexts(f - sib_deg);
            for (const auto& w : enumerate_words(sib_deg))
                for (const auto& c : inner) {
                    out.push_back(c.wrap(Context::Side::Left, w));
                    out.push_back(c.wrap(Context::Side::Right, w));
                }
        }
    }
    auto shared = std::make_shared<const std::vector<Context>>(std::move(out));
    std::lock_guard lock(mu);
    auto [it, inserted] = memo.emplace(f, shared);
    return *it->second;
}

/// Sparse coordinates of a homogeneous polynomial over enumerate_words(d).
inline SparseVec<Rational> to_coordinates(const Polynomial& p) {
    SparseVec<Rational> v;
    v.reserve(p.size());
    for (auto& [w, c] : p.terms()) v.emplace_back(word_index(w), c);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
}

inline Polynomial from_coordinates(const SparseVec<Rational>& v, const Multidegree& d) {
    const auto& ws = enumerate_words(d);
    Polynomial p;
    for (auto& [c, x] : v) p.add_term(ws.at(c), x);
    return p;
}

/// Reduced row-echelon basis of the T-ideal component at one multidegree,
/// over the monomial basis enumerate_words(multidegree).
class ConsequenceSpace {
public:
    ConsequenceSpace(std::string variety, std::uint64_t fingerprint, Multidegree d,
                     EchelonBasis<Rational> basis)
        : variety_(std::move(variety)),
          fingerprint_(fingerprint),
          degree_(std::move(d)),
          basis_(std::move(basis)) {}

    const std::string& variety() const noexcept { return variety_; }
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }
    const Multidegree& multidegree() const noexcept { return degree_; }
    const std::vector<MagmaWord>& monomials() const { return enumerate_words(degree_); }
    const EchelonBasis<Rational>& basis() const noexcept { return basis_; }
    std::size_t rank() const noexcept { return basis_.rank(); }
    std::size_t dimension() const noexcept { return basis_.columns(); }
    std::size_t quotient_dimension() const noexcept { return dimension() - rank(); }

    std::vector<MagmaWord> leading_monomials() const {
        std::vector<MagmaWord> out;
        for (auto c : basis_.pivots()) out.push_back(monomials()[c]);
        return out;
    }
    /// Non-pivot monomials: a basis of the relatively free algebra component.
    std::vector<MagmaWord> quotient_basis() const {
        std::vector<MagmaWord> out;
        for (auto c : basis_.non_pivots()) out.push_back(monomials()[c]);
        return out;
    }
    std::vector<Polynomial> rows() const {
        std::vector<Polynomial> out;
        for (auto& [p, row] : basis_.rows()) out.push_back(from_coordinates(row, degree_));
        return out;
    }

    void check_degree(const Polynomial& p) const {
        for (auto& [w, c] : p.terms())
            if (!(w.multidegree() == degree_))
                throw MultidegreeMismatchError("term " + w.str() + " is not of multidegree {" +
                                               degree_.str() + "}");
    }

    /// Normal form of p modulo the space, as a polynomial in quotient_basis().
    Polynomial normal_form(const Polynomial& p) const {
        check_degree(p);
        return from_coordinates(basis_.reduce(to_coordinates(p)), degree_);
    }

    /// Coordinates of the class of p over quotient_basis().
    std::vector<Rational> reduce(const Polynomial& p) const {
        check_degree(p);
        auto r = basis_.reduce(to_coordinates(p));
        auto np = basis_.non_pivots();
        std::vector<Rational> out(np.size());
        for (auto& [c, x] : r) {
            auto it = std::lower_bound(np.begin(), np.end(), c);
            out[static_cast<std::size_t>(it - np.begin())] = x;
        }
        return out;
    }

    bool contains(const Polynomial& p) const {
        check_degree(p);
        return basis_.contains(to_coordinates(p));
    }

private:
    std::string variety_;
    std::uint64_t fingerprint_;
    Multidegree degree_;
    EchelonBasis<Rational> basis_;
};

namespace detail {

inline std::string hex64(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << x;
    return os.str();
}

inline constexpr const char* cache_magic = "varlab-consequence-space";
inline constexpr int cache_version = 1;

inline std::string cache_file_name(std::uint64_t fingerprint, const Multidegree& d) {
    std::string s = hex64(fingerprint) + "_";
    for (auto& [v, c] : d.counts()) s += v.name() + "-" + std::to_string(c) + ".";
    return s + "cs";
}

}  // namespace detail

/// Canonical text encoding of a consequence space (line-oriented, no
/// endianness concerns). Rows list "column:value" pairs in column order.
inline std::string serialize(const ConsequenceSpace& cs) {
    std::ostringstream os;
    os << detail::cache_magic << ' ' << detail::cache_version << '\n';
    os << "fingerprint " << detail::hex64(cs.fingerprint()) << '\n';
    os << "multidegree " << cs.multidegree().str() << '\n';
    os << "columns " << cs.dimension() << '\n';
    os << "rank " << cs.rank() << '\n';
    for (auto& [p, row] : cs.basis().rows()) {
        bool first = true;
        for (auto& [c, x] : row) {
            os << (first ? "" : " ") << c << ':' << format_rational(x);
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

/// Parses serialize() output; nullopt if it does not describe the
/// requested (fingerprint, multidegree) or is malformed.
inline std::optional<ConsequenceSpace> deserialize(const std::string& text, const std::string& variety,
                                                   std::uint64_t fingerprint, const Multidegree& d) {
    std::istringstream in(text);
    std::string magic, key, value;
    int version = 0;
    if (!(in >> magic >> version) || magic != detail::cache_magic || version != detail::cache_version)
        return std::nullopt;
    if (!(in >> key >> value) || key != "fingerprint" || value != detail::hex64(fingerprint))
        return std::nullopt;
    if (!(in >> key >> value) || key != "multidegree" || value != d.str()) return std::nullopt;
    std::size_t columns = 0, rank = 0;
    if (!(in >> key >> columns) || key != "columns" || columns != enumerate_words(d).size())
        return std::nullopt;
    if (!(in >> key >> rank) || key != "rank") return std::nullopt;
    std::string line;
    std::getline(in, line);
    EchelonBasis<Rational> basis(columns);
    for (std::size_t i = 0; i < rank; ++i) {
        if (!std::getline(in, line)) return std::nullopt;
        std::istringstream ls(line);
        SparseVec<Rational> row;
        std::string tok;
        try {
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) return std::nullopt;
                std::size_t c = std::stoul(tok.substr(0, colon));
                if (c >= columns || (!row.empty() && c <= row.back().first)) return std::nullopt;
                auto x = parse_rational(tok.substr(colon + 1));
                if (x == 0) return std::nullopt;
                row.emplace_back(c, std::move(x));
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
        basis.insert(std::move(row));
    }
    if (basis.rank() != rank) return std::nullopt;
    return ConsequenceSpace(variety, fingerprint, d, std::move(basis));
}

/// Memo of consequence spaces keyed by (variety fingerprint, multidegree),
/// optionally persisted to a directory. Lookups are get-or-compute; two
/// threads may compute the same entry, and the first stored result wins.
class ConsequenceCache {
public:
    using Key = std::pair<std::uint64_t, Multidegree>;
    using Ptr = std::shared_ptr<const ConsequenceSpace>;
    using InstancePtr = std::shared_ptr<const EchelonBasis<Rational>>;

    ConsequenceCache() = default;
    explicit ConsequenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void set_directory(std::optional<std::filesystem::path> dir) {
        std::lock_guard lock(mu_);
        dir_ = std::move(dir);
    }
    std::optional<std::filesystem::path> directory() const {
        std::lock_guard lock(mu_);
        return dir_;
    }
    void clear() {
        std::lock_guard lock(mu_);
        spaces_.clear();
        instances_.clear();
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return spaces_.size();
    }
    std::size_t disk_hits() const noexcept { return disk_hits_; }

    template <class Compute>
    Ptr get_or_compute(const Key& key, Compute compute, const std::string& variety) {
        std::optional<std::filesystem::path> dir;
        {
            std::lock_guard lock(mu_);
            if (auto it = spaces_.find(key); it != spaces_.end()) return it->second;
            dir = dir_;
        }
        Ptr result;
        if (dir) result = load(*dir, key, variety);
        if (result) {
            ++disk_hits_;
        } else {
            result = std::make_shared<const ConsequenceSpace>(compute());
            if (dir) store(*dir, *result);
        }
        std::lock_guard lock(mu_);
        auto [it, inserted] = spaces_.emplace(key, result);
        return it->second;
    }

    template <class Compute>
    InstancePtr instances_get_or_compute(const Key& key, Compute compute) {
        {
            std::lock_guard lock(mu_);
            if (auto it = instances_.find(key); it != instances_.end()) return it->second;
        }
        auto result = std::make_shared<const EchelonBasis<Rational>>(compute());
        std::lock_guard lock(mu_);
        auto [it, inserted] = instances_.emplace(key, result);
        return it->second;
    }

private:
    static Ptr load(const std::filesystem::path& dir, const Key& key, const std::string& variety) {
        std::ifstream in(dir / detail::cache_file_name(key.first, key.second));
        if (!in) return nullptr;
        std::stringstream buf;
        buf << in.rdbuf();
        auto cs = deserialize(buf.str(), variety, key.first, key.second);
        if (!cs) return nullptr;
        return std::make_shared<const ConsequenceSpace>(std::move(*cs));
    }

    static void store(const std::filesystem::path& dir, const ConsequenceSpace& cs) {
        static std::atomic<unsigned> counter{0};
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        auto final_path = dir / detail::cache_file_name(cs.fingerprint(), cs.multidegree());
        auto tmp = final_path;
        tmp += ".tmp" + std::to_string(std::random_device{}()) + "_" + std::to_string(counter++);
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) return;  // caching is best effort
            out << serialize(cs);
            if (!out) {
                std::filesystem::remove(tmp, ec);
                return;
            }
        }
        std::filesystem::rename(tmp, final_path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    mutable std::mutex mu_;
    std::optional<std::filesystem::path> dir_;
    std::map<Key, Ptr> spaces_;
    std::map<Key, InstancePtr> instances_;
    std::atomic<std::size_t> disk_hits_{0};
};

inline ConsequenceCache& default_cache() {
    static ConsequenceCache cache;
    return cache;
}

namespace detail {

/// Calls f(parts) for every ordered tuple of k nonzero multidegrees summing to e.
template <class F>
void for_each_composition(const Multidegree& e, std::size_t k, std::vector<Multidegree>& parts, F&& f) {
    if (k == 0) {
        if (e.empty()) f(parts);
        return;
    }
    if (k == 1) {
        if (e.empty()) return;
        parts.push_back(e);
        f(parts);
        parts.pop_back();
        return;
    }
    if (e.total() < static_cast<int>(k)) return;
    for (const auto& first : sub_multidegrees(e)) {
        if (first == e) continue;
        parts.push_back(first);
        for_each_composition(e - first, k - 1, parts, f);
        parts.pop_back();
    }
}

/// Span of phi(w1, ..., wk) over the multilinear identities phi and all
/// words wi whose multidegrees add up to e.
inline EchelonBasis<Rational> instance_space(const VarietyPresentation& v, const Multidegree& e) {
    EchelonBasis<Rational> basis(enumerate_words(e).size());
    for (const auto& id : v.multilinear_basis()) {
        const auto& vars = id.variables();
        if (static_cast<int>(vars.size()) > e.total()) continue;
        std::vector<Multidegree> parts;
        for_each_composition(e, vars.size(), parts, [&](const std::vector<Multidegree>& ps) {
            std::vector<const std::vector<MagmaWord>*> choices;
            for (auto& p : ps) choices.push_back(&enumerate_words(p));
            std::vector<std::size_t> idx(ps.size(), 0);
            for (;;) {
                std::map<VarId, MagmaWord> sigma;
                for (std::size_t i = 0; i < vars.size(); ++i) sigma.emplace(vars[i], (*choices[i])[idx[i]]);
                basis.insert(to_coordinates(substitute_words(id.polynomial(), sigma)));
                std::size_t i = 0;
                while (i < idx.size() && ++idx[i] == choices[i]->size()) idx[i++] = 0;
                if (i == idx.size()) break;
            }
        });
    }
    return basis;
}

}  // namespace detail

inline std::shared_ptr<const ConsequenceSpace> consequence_space(const VarietyPresentation& v,
                                                                  const Multidegree& d,
                                                                  ConsequenceCache& cache = default_cache()) {
    if (d.total() < 1) throw Error("consequence_space needs a nonzero multidegree");
    return cache.get_or_compute(
        {v.fingerprint(), d},
        [&] {
            EchelonBasis<Rational> basis(enumerate_words(d).size());
            for (const auto& e : sub_multidegrees(d)) {
                auto inst = cache.instances_get_or_compute(
                    {v.fingerprint(), e}, [&] { return detail::instance_space(v, e); });
                if (inst->rank() == 0) continue;
                const auto& contexts = enumerate_contexts(d - e);
                for (auto& [p, row] : inst->rows()) {
                    Polynomial s = from_coordinates(row, e);
                    for (const auto& c : contexts) {
                        basis.insert(to_coordinates(c.plug(s)));
                        if (basis.rank() == basis.columns()) break;
                    }
                    if (basis.rank() == basis.columns()) break;
                }
                if (basis.rank() == basis.columns()) break;
            }
            return ConsequenceSpace(v.name(), v.fingerprint(), d, std::move(basis));
        },
        v.name());
}

/// True iff every homogeneous component of p lies in the T-ideal.
inline bool is_law(const VarietyPresentation& v, const Polynomial& p,
                   ConsequenceCache& cache = default_cache()) {
    for (auto& [d, comp] : homogeneous_components(p))
        if (!consequence_space(v, d, cache)->contains(comp)) return false;
    return true;
}

inline std::vector<MagmaWord> quotient_basis(const VarietyPresentation& v, const Multidegree& d,
                                             ConsequenceCache& cache = default_cache()) {
    return consequence_space(v, d, cache)->quotient_basis();
}

/// Coordinates of the class of p over quotient_basis(v, d).
inline std::vector<Rational> reduce(const VarietyPresentation& v, const Multidegree& d, const Polynomial& p,
                                    ConsequenceCache& cache = default_cache()) {
    return consequence_space(v, d, cache)->reduce(p);
}

/// Sum of the normal forms of the homogeneous components of p.
inline Polynomial normal_form(const VarietyPresentation& v, const Polynomial& p,
                              ConsequenceCache& cache = default_cache()) {
    Polynomial out;
    for (auto& [d, comp] : homogeneous_components(p)) out += consequence_space(v, d, cache)->normal_form(comp);
    return out;
}

}  // namespace varlab
