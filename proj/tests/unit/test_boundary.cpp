#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ospk/boundary.hpp"

using namespace ospk;

namespace {

ParamMap params(std::initializer_list<std::pair<const char*, const char*>> kv) {
    ParamMap p;
    for (auto& [k, v] : kv) p[k] = Param::parse(v);
    return p;
}

std::multiset<std::string> diag_entries(const KSolution& k) {
    std::multiset<std::string> out;
    for (int i = 0; i < k.spec.dim(); ++i) out.insert(k.matrix.m.get(i, i).str());
    return out;
}

}  // namespace

TEST(Boundary, FOfParameter) {
    auto u = RatFunc::var();
    EXPECT_EQ(f_of(Param::parse("1/2")), (RatFunc(1) + u * RatFunc(GaussQ::frac(1, 2))) /
                                             (RatFunc(1) - u * RatFunc(GaussQ::frac(1, 2))));
    EXPECT_EQ(f_of(Param::infinity()), RatFunc(-1));
}

TEST(Boundary, D3FixedParameterSo6) {
    auto k = make_k(parse_algebra("so:6"), Family::D3, params({{"m1", "1"}}));
    EXPECT_EQ(k.params.at("c").value, GaussQ(2));
    EXPECT_TRUE(verify_reflection(k).ok);
}

TEST(Boundary, D2ConstraintSo3) {
    auto k = make_k(parse_algebra("so:3"), Family::D2, params({{"c1", "4"}}));
    // c1 + c3 + (kappa - theta0) c1 c3 = 0 with kappa = 1/2 gives c3 = 4.
    EXPECT_EQ(k.matrix.m.get(2, 2), f_of(Param::parse("4")));
    EXPECT_TRUE(verify_reflection(k).ok);
    EXPECT_TRUE(verify_dual_reflection(dualize_k(to_physical(k))).ok);
}

TEST(Boundary, D1WithInfiniteParameterIsConstant) {
    auto k = make_k(parse_algebra("so:4"), Family::D1, params({{"c", "oo"}}));
    EXPECT_EQ(diag_entries(k), (std::multiset<std::string>{"1", "1", "-1", "-1"}));
    EXPECT_TRUE(verify_reflection(k).ok);
}

TEST(Boundary, D1RejectedOnOddOrthogonal) {
    auto s = parse_algebra("so:5");
    EXPECT_THROW(make_k(s, Family::D1, params({{"c", "1/2"}})), BoundaryError);
    auto forced = force_k(s, Family::D1, params({{"c", "1/2"}}));
    auto rep = verify_reflection(forced);
    EXPECT_FALSE(rep.ok);
    EXPECT_TRUE(rep.witness.has_value());
}

TEST(Boundary, IdentityPassesEverywhere) {
    for (const auto& s : catalog_algebras()) {
        auto k = make_custom(s, GMat<RatFunc>::identity(s, 1), Normalization::RationalU);
        EXPECT_TRUE(verify_reflection(k).ok) << s.pretty();
    }
}

TEST(Boundary, CatalogReflectionAndDual) {
    auto all = catalog_solutions();
    ASSERT_GE(all.size(), 30u);
    for (const auto& k : all) {
        auto rep = verify_reflection(k);
        EXPECT_TRUE(rep.ok) << k.spec.pretty() << " " << to_string(k.family) << " " << rep.witness.value_or("");
        EXPECT_TRUE(verify_dual_reflection(dualize_k(to_physical(k))).ok)
            << k.spec.pretty() << " " << to_string(k.family);
    }
}

TEST(Boundary, DualizeTwiceIsIdentity) {
    for (const auto& k : catalog_solutions()) {
        auto p = to_physical(k);
        EXPECT_EQ(dualize_k(dualize_k(p)).matrix, p.matrix) << k.spec.pretty() << " " << to_string(k.family);
    }
}

TEST(Boundary, C1DisplayPointOsp42) {
    bool found = false;
    for (const auto& k : catalog_solutions()) {
        if (k.family != Family::C1 || k.spec != parse_algebra("osp:4:2")) continue;
        found = true;
        EXPECT_TRUE(verify_reflection(k).ok);
    }
    EXPECT_TRUE(found);
}

TEST(Boundary, D4Degenerations) {
    auto s = parse_algebra("so:4");
    auto d1 = make_k(s, Family::D1, params({{"c", "1/2"}}));
    auto d4a = make_k(s, Family::D4, params({{"c2", "1/2"}, {"c3", "0"}}));
    EXPECT_EQ(diag_entries(d4a), diag_entries(d1));

    auto d2 = make_k(s, Family::D2, params({{"c1", "1/3"}}));
    auto d4b = make_k(s, Family::D4, params({{"c2", "1/3"}, {"c3", "-1/3"}}));
    EXPECT_EQ(diag_entries(d4b), diag_entries(d2));

    auto d3 = make_k(s, Family::D3, params({{"m1", "1"}}));
    auto d4c = make_k(s, Family::D4, params({{"c2", "oo"}, {"c3", "oo"}}));
    EXPECT_EQ(diag_entries(d4c), diag_entries(d3));
}

TEST(Boundary, TransformRules) {
    auto s = parse_algebra("so:4");
    auto d3 = make_k(parse_algebra("so:6"), Family::D3, params({{"m1", "1"}}));
    EXPECT_TRUE(verify_reflection(transform_k(d3, TransformMode::Transpose)).ok);

    // Swap the pairs (1,2) and (3,4): super-orthogonal.
    GMat<GaussQ> U(s, 1);
    U.m.set(0, 1, 1);
    U.m.set(1, 0, 1);
    U.m.set(2, 3, 1);
    U.m.set(3, 2, 1);
    ASSERT_TRUE(is_super_orthogonal(U));
    for (const auto& k : catalog_solutions()) {
        if (k.family != Family::ANTIDIAG || k.spec != s) continue;
        EXPECT_TRUE(verify_reflection(transform_k(k, TransformMode::Conjugate, &U)).ok);
    }

    GMat<GaussQ> bad = GMat<GaussQ>::identity(s, 1).scaled(2);
    EXPECT_FALSE(is_super_orthogonal(bad));
    auto d1 = make_k(s, Family::D1, params({{"c", "1/2"}}));
    EXPECT_THROW(transform_k(d1, TransformMode::Conjugate, &bad), BoundaryError);
}

TEST(Boundary, AntidiagonalOnlyForPureAlgebras) {
    EXPECT_FALSE(antidiagonal_solutions(parse_algebra("so:4")).empty());
    EXPECT_FALSE(antidiagonal_solutions(parse_algebra("sp:2")).empty());
    EXPECT_TRUE(antidiagonal_solutions(parse_algebra("so:5")).empty());
    EXPECT_TRUE(antidiagonal_solutions(parse_algebra("osp:1:2")).empty());
    EXPECT_TRUE(antidiagonal_solutions(parse_algebra("osp:2:2")).empty());
}

TEST(Boundary, MixedSlopeIsPureMonomial) {
    for (const auto& k : catalog_solutions()) {
        if (k.family != Family::C1) continue;
        std::vector<GaussQ> dir(k.spec.dim(), GaussQ(0));
        dir[0] = 1;
        auto q = mixed_slope_constraint(k, dir);
        ASSERT_GE(q.degree(), 1) << k.spec.pretty();
        for (int j = 0; j < q.degree(); ++j) EXPECT_TRUE(q.coeff(j).is_zero()) << k.spec.pretty();
    }
}

TEST(Boundary, ClassifySo6) {
    std::set<std::string> fams;
    for (const auto& f : classify_diagonal(parse_algebra("so:6"))) {
        fams.insert(f.family);
        EXPECT_TRUE(f.verified) << f.describe();
    }
    EXPECT_EQ(fams, (std::set<std::string>{"D1", "D2", "D3"}));
}

TEST(Boundary, ClassifySp4HasNoD2AndSo4HasD4) {
    for (const auto& f : classify_diagonal(parse_algebra("sp:4"))) EXPECT_NE(f.family, "D2");
    bool d4 = false;
    for (const auto& f : classify_diagonal(parse_algebra("so:4")))
        if (f.family == "D4") {
            d4 = true;
            EXPECT_EQ(f.params.size(), 2u);
        }
    EXPECT_TRUE(d4);
}

TEST(Boundary, PhysicalXiOfD1) {
    auto k = make_k(parse_algebra("so:6"), Family::D1, params({{"c", "1/2"}}));
    EXPECT_EQ(physical_xi(k).at("xi"), GaussQ(2));
}
