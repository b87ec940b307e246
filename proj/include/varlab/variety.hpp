#pragma once

// Variety presentations: identities "p = 0", the derived multilinear
// generating set, the built-in varieties and the JSON variety file format.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "varlab/parse.hpp"
#include "varlab/poly.hpp"

namespace varlab {

/// An identity lhs - rhs = 0, stored as the polynomial lhs - rhs.
class Identity {
public:
    explicit Identity(Polynomial p) : poly_(std::move(p)) {
        auto vs = poly_.variables();
        vars_.assign(vs.begin(), vs.end());
    }
    static Identity parse(std::string_view src) { return Identity(parse_polynomial(src)); }

    const Polynomial& polynomial() const noexcept { return poly_; }
    const std::vector<VarId>& variables() const noexcept { return vars_; }
    std::string str() const { return poly_.str(); }

    friend bool operator==(const Identity& a, const Identity& b) { return a.poly_ == b.poly_; }

private:
    Polynomial poly_;
    std::vector<VarId> vars_;
};

/// Homogeneous components of every identity, each fully multilinearized.
inline std::vector<Identity> derive_multilinear_basis(const std::vector<Identity>& ids) {
    std::vector<Identity> out;
    for (const auto& id : ids) {
        auto comps = homogeneous_components(id.polynomial());
        std::vector<std::pair<Multidegree, Polynomial>> by_degree(comps.begin(), comps.end());
        std::stable_sort(by_degree.begin(), by_degree.end(),
                         [](const auto& a, const auto& b) { return a.first.total() < b.first.total(); });
        for (auto& [d, comp] : by_degree)
            for (auto& m : multilinearize(comp)) out.emplace_back(std::move(m));
    }
    return out;
}

/// 64-bit FNV-1a; stable across platforms and runs.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

class VarietyPresentation {
public:
    VarietyPresentation(std::string name, std::vector<Identity> identities)
        : name_(std::move(name)),
          identities_(std::move(identities)),
          multilinear_(derive_multilinear_basis(identities_)) {
        std::string canon;
        for (auto& id : identities_) canon += id.str() + ";";
        fingerprint_ = fnv1a(canon);
    }

    static VarietyPresentation from_strings(std::string name, const std::vector<std::string>& ids) {
        std::vector<Identity> parsed;
        for (auto& s : ids) parsed.push_back(Identity::parse(s));
        return {std::move(name), std::move(parsed)};
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<Identity>& identities() const noexcept { return identities_; }
    const std::vector<Identity>& multilinear_basis() const noexcept { return multilinear_; }
    /// Hash of the canonical identity list; keys cached consequence spaces.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    /// Presentation with the identities of both.
    friend VarietyPresentation unite(const VarietyPresentation& a, const VarietyPresentation& b,
                                     std::string name) {
        auto ids = a.identities_;
        ids.insert(ids.end(), b.identities_.begin(), b.identities_.end());
        return {std::move(name), std::move(ids)};
    }

    VarietyPresentation with_identity(const Identity& id, std::string name) const {
        auto ids = identities_;
        ids.push_back(id);
        return {std::move(name), std::move(ids)};
    }

private:
    std::string name_;
    std::vector<Identity> identities_;
    std::vector<Identity> multilinear_;
    std::uint64_t fingerprint_ = 0;
};

enum class Builtin {
    Alg,
    Alt,
    Assoc,
    AAAlg,
    AAAAlg,
    Lie,
    LeibnizRight,
    LeibnizLeft,
    SymLeibniz,
    Abelian,
    Nil2a,
};

inline const std::vector<std::pair<Builtin, std::string>>& builtin_keys() {
    static const std::vector<std::pair<Builtin, std::string>> keys{
        {Builtin::Alg, "alg"},
        {Builtin::Alt, "alt"},
        {Builtin::Assoc, "assoc"},
        {Builtin::AAAlg, "aaalg"},
        {Builtin::AAAAlg, "aaaalg"},
        {Builtin::Lie, "lie"},
        {Builtin::LeibnizRight, "leibniz-right"},
        {Builtin::LeibnizLeft, "leibniz-left"},
        {Builtin::SymLeibniz, "sym-leibniz"},
        {Builtin::Abelian, "abelian"},
        {Builtin::Nil2a, "nil2a"},
    };
    return keys;
}

namespace identities {
inline constexpr const char* alternating = "x*x";
inline constexpr const char* anticommutative = "x*y + y*x";
inline constexpr const char* associative = "x*(y*z) - (x*y)*z";
inline constexpr const char* antiassociative = "x*(y*z) + (x*y)*z";
inline constexpr const char* jacobi = "x*(y*z) + z*(x*y) + y*(z*x)";
inline constexpr const char* leibniz_right = "(x*y)*z - x*(y*z) - (x*z)*y";
inline constexpr const char* leibniz_left = "x*(y*z) - (x*y)*z - y*(x*z)";
inline constexpr const char* abelian = "x*y";
inline constexpr const char* nil2a = "x*(y*z)";
}  // namespace identities

inline VarietyPresentation builtin_variety(Builtin key) {
    using namespace identities;
    switch (key) {
        case Builtin::Alg: return VarietyPresentation::from_strings("Alg", {});
        case Builtin::Alt: return VarietyPresentation::from_strings("Alt", {alternating});
        case Builtin::Assoc: return VarietyPresentation::from_strings("Assoc", {associative});
        case Builtin::AAAlg: return VarietyPresentation::from_strings("AAAlg", {antiassociative});
        case Builtin::AAAAlg:
            return VarietyPresentation::from_strings("AAAAlg", {alternating, antiassociative});
        case Builtin::Lie: return VarietyPresentation::from_strings("Lie", {alternating, jacobi});
        case Builtin::LeibnizRight:
            return VarietyPresentation::from_strings("LeibnizRight", {leibniz_right});
        case Builtin::LeibnizLeft:
            return VarietyPresentation::from_strings("LeibnizLeft", {leibniz_left});
        case Builtin::SymLeibniz:
            return VarietyPresentation::from_strings("SymLeibniz", {leibniz_right, leibniz_left});
        case Builtin::Abelian: return VarietyPresentation::from_strings("Abelian", {abelian});
        case Builtin::Nil2a: return VarietyPresentation::from_strings("Nil2a", {nil2a});
    }
    throw Error("unknown builtin variety");
}

inline VarietyPresentation builtin_variety(std::string_view key) {
    for (auto& [b, k] : builtin_keys())
        if (k == key) return builtin_variety(b);
    throw Error("unknown builtin variety '" + std::string(key) + "'");
}

inline VarietyPresentation variety_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("identities") || !doc["identities"].is_array())
        throw Error("variety document needs an \"identities\" array");
    std::string name = doc.value("name", std::string("unnamed"));
    std::vector<std::string> ids;
    for (auto& s : doc["identities"]) {
        if (!s.is_string()) throw Error("identities must be strings");
        ids.push_back(s.get<std::string>());
    }
    return VarietyPresentation::from_strings(std::move(name), ids);
}

inline nlohmann::ordered_json variety_to_json(const VarietyPresentation& v) {
    nlohmann::ordered_json doc;
    doc["name"] = v.name();
    doc["identities"] = nlohmann::ordered_json::array();
    for (auto& id : v.identities()) doc["identities"].push_back(id.str());
    return doc;
}

/// "builtin:<key>" or a path to a JSON variety file.
inline VarietyPresentation load_variety(const std::string& source) {
    constexpr std::string_view prefix = "builtin:";
    if (source.rfind(prefix, 0) == 0) return builtin_variety(source.substr(prefix.size()));
    std::ifstream in(source);
    if (!in) throw Error("cannot open variety file '" + source + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed variety file '" + source + "': " + e.what());
    }
    return variety_from_json(doc);
}

}  // namespace varlab
