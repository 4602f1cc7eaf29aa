#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "ospk/rmatrix.hpp"

using namespace ospk;

namespace {

GMat<GaussQ> eval_exact(const GMat<RatFunc>& a, const GaussQ& x) {
    GMat<GaussQ> out(a.spec, a.factors);
    a.m.for_each([&](int i, int j, const RatFunc& f) { out.m.set(i, j, f.eval_exact(x)); });
    return out;
}

Eigen::MatrixXcd eval_num(const GMat<RatFunc>& a, std::complex<double> x) {
    int n = a.m.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    a.m.for_each([&](int i, int j, const RatFunc& f) { out(i, j) = f.eval(x); });
    return out;
}

}  // namespace

TEST(RMatrix, PhysicalAtZeroIsMinusKappaP) {
    auto s = build_grading(3, 0, 1);
    auto r = r_matrix(s, Normalization::PhysicalLambda);
    EXPECT_EQ(eval_exact(r.matrix, GaussQ(0)), make_P<GaussQ>(s).scaled(GaussQ::frac(-1, 2)));
}

TEST(RMatrix, RationalTendsToIdentity) {
    for (const char* al : {"so:3", "sp:4", "osp:2:2"}) {
        auto s = parse_algebra(al);
        auto R = eval_num(r_matrix(s, Normalization::RationalU).matrix, 1e7);
        double err = (R - Eigen::MatrixXcd::Identity(R.rows(), R.cols())).cwiseAbs().maxCoeff();
        EXPECT_LT(err, 1e-6) << al;
    }
}

TEST(RMatrix, PhysicalEntriesArePolynomialsOfDegreeTwo) {
    auto r = r_matrix(build_grading(0, 2, -1), Normalization::PhysicalLambda);
    r.matrix.m.for_each([&](int, int, const RatFunc& f) {
        EXPECT_TRUE(f.is_polynomial());
        EXPECT_LE(f.num().degree(), 2);
    });
}

TEST(RMatrix, UnitarityNumericSo4) {
    auto r = r_matrix(build_grading(4, 0, 1), Normalization::PhysicalLambda);
    double l = 0.37;
    Eigen::MatrixXcd prod = eval_num(r.matrix, l) * eval_num(r.matrix, -l);
    std::complex<double> expect = (l * l + 1.0) * (l * l + 1.0);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
    EXPECT_LT((prod - expect * id).cwiseAbs().maxCoeff(), 1e-12);
}

class CatalogAlgebra : public ::testing::TestWithParam<int> {
protected:
    GradingSpec spec() const { return catalog_algebras()[GetParam()]; }
};

TEST_P(CatalogAlgebra, PQAlgebra) { EXPECT_TRUE(verify_pq_algebra(spec()).ok); }

TEST_P(CatalogAlgebra, YangBaxter) {
    auto rep = verify_ybe(spec());
    EXPECT_TRUE(rep.ok) << rep.witness.value_or("");
}

TEST_P(CatalogAlgebra, FlippedQBreaksYangBaxter) {
    auto rep = verify_ybe(spec(), true);
    EXPECT_FALSE(rep.ok);
    EXPECT_TRUE(rep.witness.has_value());
}

TEST_P(CatalogAlgebra, CrossingUnitarity) { EXPECT_TRUE(verify_crossing_unitarity(spec()).ok); }

TEST_P(CatalogAlgebra, DoubleTranspose) { EXPECT_TRUE(verify_double_transpose(spec()).ok); }

INSTANTIATE_TEST_SUITE_P(All, CatalogAlgebra, ::testing::Range(0, static_cast<int>(catalog_algebras().size())),
                         [](const auto& info) {
                             auto d = catalog_algebras()[info.param].descriptor();
                             for (auto& c : d)
                                 if (c == ':' || c == '-') c = '_';
                             return d;
                         });
