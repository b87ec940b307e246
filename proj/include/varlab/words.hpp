#pragma once

// Free magma words over named variables, multidegrees, and exhaustive
// enumeration of all words of a given multidegree.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace varlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_valid_var_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

/// A variable name. Equality is by name, ordering is lexicographic on name.
class VarId {
public:
    VarId() = default;
    explicit VarId(std::string name) : name_(std::move(name)) {
        if (!is_valid_var_name(name_)) throw Error("invalid variable name '" + name_ + "'");
    }

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const VarId&, const VarId&) = default;
    friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
        int c = a.name_.compare(b.name_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    std::string name_;
};

inline std::ostream& operator<<(std::ostream& os, const VarId& v) { return os << v.name(); }

/// Per-variable occurrence counts. Only positive counts are stored.
class Multidegree {
public:
    using Map = std::map<VarId, int>;

    Multidegree() = default;
    Multidegree(std::initializer_list<std::pair<const VarId, int>> init) {
        for (auto& [v, c] : init) add(v, c);
    }
    static Multidegree of(std::initializer_list<std::pair<std::string, int>> init) {
        Multidegree d;
        for (auto& [v, c] : init) d.add(VarId(v), c);
        return d;
    }

    int operator[](const VarId& v) const {
        auto it = counts_.find(v);
        return it == counts_.end() ? 0 : it->second;
    }
    void add(const VarId& v, int c) {
        if (c == 0) return;
        int n = (*this)[v] + c;
        if (n < 0) throw Error("negative multidegree count for " + v.name());
        if (n == 0)
            counts_.erase(v);
        else
            counts_[v] = n;
    }

    int total() const {
        int t = 0;
        for (auto& [v, c] : counts_) t += c;
        return t;
    }
    bool empty() const noexcept { return counts_.empty(); }
    const Map& counts() const noexcept { return counts_; }
    std::vector<VarId> variables() const {
        std::vector<VarId> out;
        for (auto& [v, c] : counts_) out.push_back(v);
        return out;
    }
    bool is_multilinear() const {
        return std::all_of(counts_.begin(), counts_.end(), [](auto& e) { return e.second == 1; });
    }

    /// Componentwise <=.
    bool divides(const Multidegree& other) const {
        return std::all_of(counts_.begin(), counts_.end(),
                           [&](auto& e) { return e.second <= other[e.first]; });
    }

    Multidegree& operator+=(const Multidegree& o) {
        for (auto& [v, c] : o.counts_) add(v, c);
        return *this;
    }
    Multidegree& operator-=(const Multidegree& o) {
        for (auto& [v, c] : o.counts_) add(v, -c);
        return *this;
    }
    friend Multidegree operator+(Multidegree a, const Multidegree& b) { return a += b; }
    friend Multidegree operator-(Multidegree a, const Multidegree& b) { return a -= b; }

    friend bool operator==(const Multidegree&, const Multidegree&) = default;
    friend bool operator<(const Multidegree& a, const Multidegree& b) {
        return a.counts_ < b.counts_;
    }

    /// "x:1,y:2"
    std::string str() const {
        std::string s;
        for (auto& [v, c] : counts_) {
            if (!s.empty()) s += ',';
            s += v.name() + ':' + std::to_string(c);
        }
        return s;
    }

private:
    Map counts_;
};

inline std::ostream& operator<<(std::ostream& os, const Multidegree& d) {
    return os << '{' << d.str() << '}';
}

/// All nonzero multidegrees e with e <= d componentwise, including d itself.
inline std::vector<Multidegree> sub_multidegrees(const Multidegree& d) {
    std::vector<Multidegree> out{Multidegree{}};
    for (auto& [v, c] : d.counts()) {
        std::vector<Multidegree> next;
        for (auto& partial : out)
            for (int k = 0; k <= c; ++k) {
                Multidegree e = partial;
                e.add(v, k);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    out.erase(out.begin());  // the zero multidegree is generated first
    return out;
}

class MagmaWord;
int compare_words(const MagmaWord& a, const MagmaWord& b);

/// A fully parenthesized nonassociative monomial. Words are hash-consed, so
/// structurally equal words share one node and equality is pointer equality.
class MagmaWord {
    struct Node {
        std::optional<VarId> var;
        std::shared_ptr<const Node> left, right;
        Multidegree degree;
        int total = 1;
        std::size_t hash = 0;
    };

public:
    static MagmaWord leaf(const VarId& v) {
        std::string key = "L" + v.name();
        return MagmaWord(intern(key, [&] {
            auto n = std::make_shared<Node>();
            n->var = v;
            n->degree.add(v, 1);
            n->total = 1;
            n->hash = std::hash<std::string>{}(v.name());
            return n;
        }));
    }
    static MagmaWord leaf(const std::string& name) { return leaf(VarId(name)); }

    static MagmaWord node(const MagmaWord& l, const MagmaWord& r) {
        std::string key = "N" + std::to_string(reinterpret_cast<std::uintptr_t>(l.node_.get())) +
                          "," + std::to_string(reinterpret_cast<std::uintptr_t>(r.node_.get()));
        return MagmaWord(intern(key, [&] {
            auto n = std::make_shared<Node>();
            n->left = l.node_;
            n->right = r.node_;
            n->degree = l.node_->degree + r.node_->degree;
            n->total = l.node_->total + r.node_->total;
            n->hash = l.node_->hash * 1000003u ^ (r.node_->hash + 0x9e3779b97f4a7c15ull);
            return n;
        }));
    }

    bool is_leaf() const noexcept { return node_->var.has_value(); }
    const VarId& var() const {
        if (!is_leaf()) throw Error("var() on a product word");
        return *node_->var;
    }
    MagmaWord left() const { return MagmaWord(node_->left); }
    MagmaWord right() const { return MagmaWord(node_->right); }

    const Multidegree& multidegree() const noexcept { return node_->degree; }
    int total_degree() const noexcept { return node_->total; }
    std::size_t hash() const noexcept { return node_->hash; }

    friend bool operator==(const MagmaWord& a, const MagmaWord& b) noexcept {
        return a.node_ == b.node_;
    }

    /// Canonical rendering in the identity syntax, e.g. "x*(y*z)".
    std::string str() const { return render(false); }

    /// Rendering with custom leaf text; leaf(v, nested) is told whether the
    /// leaf sits inside a product.
    template <class LeafText>
    std::string render_with(const LeafText& leaf, bool nested = false) const {
        if (is_leaf()) return leaf(var(), nested);
        std::string s = left().render_with(leaf, true) + "*" + right().render_with(leaf, true);
        return nested ? "(" + s + ")" : s;
    }

private:
    explicit MagmaWord(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    template <class Make>
    static std::shared_ptr<const Node> intern(const std::string& key, Make make) {
        static std::mutex mu;
        static std::unordered_map<std::string, std::shared_ptr<const Node>> table;
        std::lock_guard lock(mu);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        auto n = make();
        table.emplace(key, n);
        return n;
    }

    std::string render(bool nested) const {
        if (is_leaf()) return var().name();
        std::string s = left().render(true) + "*" + right().render(true);
        return nested ? "(" + s + ")" : s;
    }

    std::shared_ptr<const Node> node_;
};

inline std::ostream& operator<<(std::ostream& os, const MagmaWord& w) { return os << w.str(); }

inline Multidegree word_multidegree(const MagmaWord& w) { return w.multidegree(); }

/// Strict total order: total degree, then leaf before product, then leaves by
/// variable name and products recursively by (left, right).
inline int compare_words(const MagmaWord& a, const MagmaWord& b) {
    if (a == b) return 0;
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
    if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? -1 : 1;
    if (a.is_leaf()) return a.var() < b.var() ? -1 : 1;
    if (int c = compare_words(a.left(), b.left())) return c;
    return compare_words(a.right(), b.right());
}

struct WordLess {
    bool operator()(const MagmaWord& a, const MagmaWord& b) const { return compare_words(a, b) < 0; }
};

struct WordHash {
    std::size_t operator()(const MagmaWord& w) const noexcept { return w.hash(); }
};

/// Every word of multidegree d, sorted by compare_words. Memoized.
inline const std::vector<MagmaWord>& enumerate_words(const Multidegree& d) {
    static std::mutex mu;
    static std::map<Multidegree, std::shared_ptr<const std::vector<MagmaWord>>> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(d); it != memo.end()) return *it->second;
    }
    std::vector<MagmaWord> out;
    if (d.total() == 1) {
        out.push_back(MagmaWord::leaf(d.counts().begin()->first));
    } else if (d.total() > 1) {
        for (const auto& left_deg : sub_multidegrees(d)) {
            if (left_deg == d) continue;
            Multidegree right_deg = d - left_deg;
            const auto& ls = enumerate_words(left_deg);
            const auto& rs = enumerate_words(right_deg);
            for (const auto& l : ls)
                for (const auto& r : rs) out.push_back(MagmaWord::node(l, r));
        }
        std::sort(out.begin(), out.end(), WordLess{});
    }
    auto shared = std::make_shared<const std::vector<MagmaWord>>(std::move(out));
    std::lock_guard lock(mu);
    auto [it, inserted] = memo.emplace(d, shared);
    return *it->second;
}

/// Position of w inside enumerate_words(w.multidegree()).
inline std::size_t word_index(const MagmaWord& w) {
    const auto& ws = enumerate_words(w.multidegree());
    auto it = std::lower_bound(ws.begin(), ws.end(), w, WordLess{});
    return static_cast<std::size_t>(it - ws.begin());
}

/// Replace every leaf by the image word of its variable.
inline MagmaWord substitute_leaves(const MagmaWord& w,
                                   const std::function<MagmaWord(const VarId&)>& image) {
    if (w.is_leaf()) return image(w.var());
    return MagmaWord::node(substitute_leaves(w.left(), image), substitute_leaves(w.right(), image));
}

}  // namespace varlab
