#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ospk/chain.hpp"

namespace ospk {

enum class Series { SoOdd, SoEven, Sp };

std::string to_string(Series s);
Series parse_series(const std::string& s);  // "so-odd", "so-even", "sp"
// Series and rank k of a pure so(n) / sp(n) algebra (so(2) is rejected).
std::pair<Series, int> series_of(const GradingSpec& s);
GradingSpec algebra_of(Series s, int k);

// Root sets are indexed 0..k-1. so(2k+1) and sp(2k): set l-1 holds lambda^(l).
// so(2k): sets 0..k-3 hold lambda^(1..k-2), set k-2 is (+) and set k-1 is (-).
struct BetheProblem {
    GradingSpec spec;
    Series series;
    int k;
    int N;
    KSolution kminus;                  // physical normalization
    Family family = Family::CUSTOM;    // CUSTOM means K- = 1
    std::map<std::string, GaussQ> xi;  // physical boundary parameters
    int m = 0;                         // D3 block size
};

BetheProblem make_problem(const ChainContext& ctx);
BetheProblem make_problem(Series s, int k, int N, const std::optional<KSolution>& kminus = std::nullopt);
ChainContext chain_of(const BetheProblem& p);

struct BetheState {
    BetheProblem problem;
    std::vector<std::vector<cplx>> roots;
    std::vector<std::vector<long>> branch;  // Bethe quantum numbers of the log form
    double residual = 0;
    bool converged = false;

    std::vector<int> occupation() const;
};

std::string set_label(Series s, int k, int set);  // "1", "2", "+", "-"

// Dressing functions A_0..A_{n-1} at one point. Exact version for exact roots.
std::vector<cplx> dressing(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots, cplx lambda);
std::vector<RatFunc> dressing_exact(const BetheProblem& p, const std::vector<std::vector<GaussQ>>& roots);

// Lambda(l) = a^{2N} g~_0 A_0 + b^{2N} sum g~_l A_l + c^{2N} g~_{n-1} A_{n-1}.
cplx dressing_eigenvalue(const BetheState& s, cplx lambda);
RatFunc dressing_eigenvalue_exact(const BetheProblem& p, const std::vector<std::vector<GaussQ>>& roots);

// One entry per root, in set order: log(LHS/RHS) reduced to imaginary part in (-pi, pi].
std::vector<cplx> bae_residual(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots);
// Branch integers I with log-sum = 2 pi i I.
std::vector<std::vector<long>> bae_branches(const BetheProblem& p, const std::vector<std::vector<cplx>>& roots);

struct SolveOptions {
    int seeds = 300;
    int max_iter = 80;
    double tol = 1e-12;
    unsigned rng_seed = 12345;
    int threads = 0;  // 0: hardware concurrency
};

// Newton on the log form from random seeds (plus string-shaped seeds); solutions that
// coincide up to sign/permutation within a set are merged. Singular solutions (roots at 0,
// colliding roots, roots at poles of the eigenvalue formula) are discarded.
std::vector<BetheState> solve_bae(const BetheProblem& p, const std::vector<int>& M, const SolveOptions& opt = {});
// Newton polish of one start point; returns nullopt if it does not converge.
std::optional<BetheState> polish(const BetheProblem& p, std::vector<std::vector<cplx>> roots, const SolveOptions& opt = {});

// E = -(1/2 pi) sum_j 1/((lambda_j^(1))^2 + 1/4) over the first-sea roots (both spinor
// sets for so(4), whose first sea is split).
double energy(const BetheState& s);

// S^(l) from the occupation numbers.
std::vector<int> quantum_numbers(const BetheProblem& p, const std::vector<int>& M);

// Canonical representative: each root mapped to Re > 0 (or Re = 0, Im >= 0), sets sorted.
std::vector<std::vector<cplx>> canonical_roots(const std::vector<std::vector<cplx>>& roots);

}  // namespace ospk
