#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "ospk/bethe.hpp"

using namespace ospk;

namespace {

ParamMap params(std::initializer_list<std::pair<const char*, const char*>> kv) {
    ParamMap p;
    for (auto& [k, v] : kv) p[k] = Param::parse(v);
    return p;
}

std::vector<std::vector<cplx>> random_roots(const BetheProblem& p, std::vector<int> M, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> r(0.1, 1.5), im(-0.3, 0.3);
    std::vector<std::vector<cplx>> out(M.size());
    for (std::size_t s = 0; s < M.size(); ++s)
        for (int j = 0; j < M[s]; ++j) out[s].emplace_back(r(rng), im(rng));
    (void)p;
    return out;
}

double min_dist(const std::vector<cplx>& ev, cplx x) {
    double best = 1e300;
    for (auto e : ev) best = std::min(best, std::abs(e - x) / (1 + std::abs(x)));
    return best;
}

// Every solution of so(5), N = 2, K = 1 with at most N roots per set.
std::vector<BetheState> so5_states() {
    auto p = make_problem(Series::SoOdd, 2, 2);
    SolveOptions opt;
    opt.seeds = 200;
    std::vector<BetheState> out;
    for (int m1 = 0; m1 <= 2; ++m1)
        for (int m2 = 0; m2 <= 2; ++m2)
            for (auto& st : solve_bae(p, {m1, m2}, opt)) out.push_back(st);
    return out;
}

}  // namespace

TEST(Bethe, EmptyRootsGivePseudoVacuum) {
    auto p = make_problem(Series::SoOdd, 2, 2);
    BetheState st{p, {{}, {}}, {}, 0, true};
    cplx l(0.3, 0.2);
    cplx L0 = pseudo_vacuum_eigenvalue(chain_of(p)).eval(l);
    EXPECT_LT(std::abs(dressing_eigenvalue(st, l) - L0), 1e-12 * std::abs(L0));
}

TEST(Bethe, FirstDressingIsUnimodularPair) {
    auto p = make_problem(Series::SoOdd, 2, 2);
    auto roots = random_roots(p, {2, 1}, 1);
    for (double l : {0.2, 0.9, 1.7}) {
        auto a = dressing(p, roots, l), b = dressing(p, roots, -l);
        EXPECT_LT(std::abs(a[0] * b[0] - 1.0), 1e-12);
    }
}

TEST(Bethe, DressedEigenvalueIsCrossingSymmetric) {
    for (auto [s, k] : {std::pair{Series::SoOdd, 2}, {Series::SoEven, 2}, {Series::Sp, 2}}) {
        auto p = make_problem(s, k, 2);
        BetheState st{p, random_roots(p, {1, 1}, 4), {}, 0, true};
        double kap = p.spec.kappa().get_d();
        cplx l(0.37, 0.05);
        cplx a = dressing_eigenvalue(st, l), b = dressing_eigenvalue(st, -l - cplx(0, kap));
        EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(a)) << to_string(s);
    }
}

TEST(Bethe, ResidualInvariantUnderRootSignFlip) {
    auto p = make_problem(Series::SoOdd, 2, 3);
    auto roots = random_roots(p, {2, 1}, 2);
    auto flipped = roots;
    flipped[0][1] = -flipped[0][1];
    auto a = bae_residual(p, roots), b = bae_residual(p, flipped);
    ASSERT_EQ(a.size(), b.size());
    // Equation for the flipped root itself is the reciprocal one; the others are unchanged.
    EXPECT_LT(std::abs(a[0] - b[0]), 1e-10 * (1 + std::abs(a[0])));
    EXPECT_LT(std::abs(a[2] - b[2]), 1e-10 * (1 + std::abs(a[2])));
}

TEST(Bethe, D4SetsDecouple) {
    auto s = parse_algebra("so:4");
    auto p = make_problem(make_chain(s, 2, make_k(s, Family::D4, params({{"c2", "1/2"}, {"c3", "1/3"}}))));
    auto roots = random_roots(p, {2, 1}, 5);
    auto other = roots;
    other[1][0] = cplx(0.77, 0.1);
    auto a = bae_residual(p, roots), b = bae_residual(p, other);
    EXPECT_LT(std::abs(a[0] - b[0]), 1e-12 * (1 + std::abs(a[0])));
    EXPECT_LT(std::abs(a[1] - b[1]), 1e-12 * (1 + std::abs(a[1])));
}

TEST(Bethe, Sp2SolutionsMatchSpectrum) {
    auto p = make_problem(Series::Sp, 1, 2);
    SolveOptions opt;
    opt.seeds = 200;
    auto states = solve_bae(p, {1}, opt);
    ASSERT_FALSE(states.empty());
    auto ctx = chain_of(p);
    for (double l : {0.13, 0.47, 0.91}) {
        auto rec = spectrum(ctx, l);
        for (const auto& st : states) EXPECT_LT(min_dist(rec.eigenvalues, dressing_eigenvalue(st, l)), 1e-8);
    }
}

TEST(Bethe, NoRootsIsSinglePseudoVacuum) {
    auto p = make_problem(Series::SoOdd, 2, 2);
    auto states = solve_bae(p, {0, 0});
    ASSERT_EQ(states.size(), 1u);
    EXPECT_EQ(energy(states[0]), 0.0);
}

TEST(Bethe, EnergyOfSingleRoot) {
    auto p = make_problem(Series::SoOdd, 2, 2);
    BetheState st{p, {{cplx(0.5, 0)}, {}}, {}, 0, true};
    EXPECT_NEAR(energy(st), -1.0 / std::numbers::pi, 1e-15);
}

TEST(Bethe, QuantumNumbersMatchEigenvectorWeights) {
    auto p = make_problem(Series::SoOdd, 2, 2);
    auto ctx = chain_of(p);
    cplx l(0.31, 0.07);
    auto rec = spectrum(ctx, l);
    auto states = so5_states();
    ASSERT_GE(states.size(), 3u);
    for (const auto& st : states) {
        auto M = st.occupation();
        auto S = quantum_numbers(p, M);
        cplx L = dressing_eigenvalue(st, l);
        bool matched = false;
        for (std::size_t i = 0; i < rec.eigenvalues.size(); ++i)
            if (std::abs(rec.eigenvalues[i] - L) < 1e-8 * (1 + std::abs(L)) && rec.sectors[i] == S) matched = true;
        EXPECT_TRUE(matched) << "M=" << M[0] << "," << M[1];
    }
}

TEST(Bethe, EigenvalueRegularAtDressingPoles) {
    auto states = so5_states();
    ASSERT_GE(states.size(), 3u);
    for (const auto& st : states)
        for (int l = 1; l <= 3; ++l) {
            cplx c(0, -0.5 * l);
            double near = 0, far = 0;
            for (int t = 0; t < 8; ++t) {
                cplx dir = std::polar(1.0, 2 * std::numbers::pi * t / 8 + 0.1);
                near = std::max(near, std::abs(dressing_eigenvalue(st, c + 1e-4 * dir)));
                far = std::max(far, std::abs(dressing_eigenvalue(st, c + 1e-2 * dir)));
            }
            EXPECT_LT(near, 2 * far + 1e-12) << "l=" << l;
        }
}

TEST(Bethe, OddOrthogonalMiddleDressingsAgree) {
    // so(2k+1): A_k and A_{k-1} coincide at -ik/2 on solutions.
    for (const auto& st : so5_states()) {
        auto A = dressing(st.problem, st.roots, cplx(0, -1));
        EXPECT_LT(std::abs(A[2] - A[1]), 1e-8 * (1 + std::abs(A[1])));
    }
}

TEST(Bethe, CanonicalRootsAreSignIndependent) {
    std::vector<std::vector<cplx>> a{{cplx(0.3, 0.1), cplx(-0.8, 0)}};
    std::vector<std::vector<cplx>> b{{cplx(0.8, 0), cplx(-0.3, -0.1)}};
    EXPECT_EQ(canonical_roots(a), canonical_roots(b));
}
