#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "varlab/tideal.hpp"

using namespace varlab;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

std::vector<Polynomial> polys(const std::vector<Identity>& ids) {
    std::vector<Polynomial> out;
    for (auto& i : ids) out.push_back(i.polynomial());
    return out;
}

}  // namespace

TEST(Variety, BuiltinPresentations) {
    EXPECT_EQ(polys(builtin_variety(Builtin::Lie).identities()),
              (std::vector<Polynomial>{P("x*x"), P("x*(y*z) + z*(x*y) + y*(z*x)")}));
    EXPECT_EQ(polys(builtin_variety(Builtin::LeibnizRight).identities()),
              (std::vector<Polynomial>{P("(x*y)*z - x*(y*z) - (x*z)*y")}));
    EXPECT_EQ(polys(builtin_variety(Builtin::Abelian).identities()), (std::vector<Polynomial>{P("x*y")}));
    EXPECT_TRUE(builtin_variety(Builtin::Alg).identities().empty());
    EXPECT_EQ(builtin_variety(Builtin::AAAAlg).identities().size(), 2u);
    EXPECT_EQ(builtin_variety(Builtin::SymLeibniz).identities().size(), 2u);
    EXPECT_EQ(polys(builtin_variety("nil2a").identities()), (std::vector<Polynomial>{P("x*(y*z)")}));
    EXPECT_THROW(builtin_variety("nope"), Error);
}

TEST(Variety, MultilinearBasisExamples) {
    EXPECT_EQ(polys(builtin_variety(Builtin::Alt).multilinear_basis()),
              (std::vector<Polynomial>{P("x*x_2 + x_2*x")}));
    EXPECT_EQ(polys(builtin_variety(Builtin::Lie).multilinear_basis()),
              (std::vector<Polynomial>{P("x*x_2 + x_2*x"), P("x*(y*z) + z*(x*y) + y*(z*x)")}));
    EXPECT_EQ(polys(builtin_variety(Builtin::Nil2a).multilinear_basis()), (std::vector<Polynomial>{P("x*(y*z)")}));
}

TEST(Variety, MultilinearBasisIsMultilinearForBuiltins) {
    for (auto& [key, name] : builtin_keys()) {
        const auto v = builtin_variety(key);
        for (auto& id : v.multilinear_basis()) {
            EXPECT_TRUE(id.polynomial().is_multilinear()) << name << ": " << id.str();
            for (auto& [w, c] : id.polynomial().terms()) EXPECT_TRUE(w.multidegree().is_multilinear());
        }
    }
}

TEST(Variety, NonHomogeneousIdentitySplitsIntoComponents) {
    auto v = VarietyPresentation::from_strings("mixed", {"x*x + x*(y*z)"});
    auto ml = polys(v.multilinear_basis());
    ASSERT_EQ(ml.size(), 2u);
    EXPECT_EQ(ml[0], P("x*x_2 + x_2*x"));
    EXPECT_EQ(ml[1], P("x*(y*z)"));
}

TEST(Variety, IdentityVariablesAreSupport) {
    auto id = Identity::parse("x*(y*z) - x*(y*z) + y*y");
    EXPECT_EQ(id.variables(), (std::vector<VarId>{VarId("y")}));
}

TEST(Variety, FingerprintDependsOnLawsNotName) {
    auto a = VarietyPresentation::from_strings("a", {"x*x"});
    auto b = VarietyPresentation::from_strings("b", {"x * x"});
    auto c = VarietyPresentation::from_strings("c", {"x*y"});
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    EXPECT_NE(a.fingerprint(), c.fingerprint());
}

TEST(Variety, JsonRoundTripAndFiles) {
    auto dir = std::filesystem::temp_directory_path() / "varlab_variety_test";
    std::filesystem::create_directories(dir);
    auto v = unite(builtin_variety(Builtin::Alt), builtin_variety(Builtin::Assoc), "AltAssoc");
    auto path = dir / "v.json";
    std::ofstream(path) << variety_to_json(v).dump();
    auto back = load_variety(path.string());
    EXPECT_EQ(back.name(), "AltAssoc");
    EXPECT_EQ(back.fingerprint(), v.fingerprint());

    std::ofstream(dir / "bad.json") << "{\"name\": \"x\"}";
    EXPECT_THROW(load_variety((dir / "bad.json").string()), Error);
    std::ofstream(dir / "bad2.json") << "{\"identities\": [\"x*y*z\"]}";
    EXPECT_THROW(load_variety((dir / "bad2.json").string()), ParseError);
    std::ofstream(dir / "bad3.json") << "not json";
    EXPECT_THROW(load_variety((dir / "bad3.json").string()), Error);
    EXPECT_THROW(load_variety((dir / "missing.json").string()), Error);
    EXPECT_EQ(load_variety("builtin:lie").name(), "Lie");
    std::filesystem::remove_all(dir);
}

TEST(Variety, ShippedAltAssocFile) {
    auto v = load_variety(std::string(VARLAB_DATA_DIR) + "/varieties/alt_assoc.json");
    EXPECT_EQ(v.identities().size(), 2u);
}

TEST(Variety, LawIffMultilinearizationsAreLaws) {
    std::vector<Polynomial> probes = {P("x*x"),         P("x*(x*y)"),         P("(x*x)*y"),
                                      P("x*(x*x)"),     P("(x*y)*x + x*(y*x)"), P("(x*x)*(y*y)"),
                                      P("x*(y*y) - (y*y)*x")};
    for (auto& [key, name] : builtin_keys()) {
        auto v = builtin_variety(key);
        for (auto& p : probes) {
            bool all = true;
            for (auto& m : multilinearize(p)) all = all && is_law(v, m);
            EXPECT_EQ(is_law(v, p), all) << name << " " << p.str();
        }
    }
}
