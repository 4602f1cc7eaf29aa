#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ospk/boundary.hpp"

namespace ospk {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplxl = std::complex<long double>;
using CMatL = Eigen::Matrix<cplxl, Eigen::Dynamic, Eigen::Dynamic>;

struct ChainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Open chain t(l) = Tr_0 K+_0(l) T_0(l) K-_0(l) That_0(l) with
// T_0 = R_0N ... R_01 and That_0 = R_10 ... R_N0, physical normalization.
// Layout: the auxiliary space is factor 0, the most significant digit of the
// flattened index; site j (1-based) is factor j.
struct ChainContext {
    GradingSpec spec;
    int N = 1;
    KSolution kminus;
    KSolution kplus;
    std::size_t mem_budget_bytes = std::size_t(512) << 20;

    int dim() const { return spec.dim(); }
    long long space_dim() const;  // d^N
};

// K = 1 in the physical normalization.
KSolution identity_k(const GradingSpec& s);

// Restricts to pure so(n) / sp(n). K- defaults to the identity; K+ defaults to
// the dual of the identity, which is again the identity.
ChainContext make_chain(const GradingSpec& s, int N, std::optional<KSolution> kminus = std::nullopt,
                        std::optional<KSolution> kplus = std::nullopt);

CMat transfer_matrix(const ChainContext& ctx, cplx lambda);
// Same in extended precision, for commutator checks where the entries are large.
CMatL transfer_matrix_ld(const ChainContext& ctx, cplxl lambda);
// Exact t(l) with rational-function entries; N <= 2 and d^N <= 25.
GMat<RatFunc> transfer_matrix_exact(const ChainContext& ctx);

// Lambda0(l) = a^{2N} g~_0 + b^{2N} sum_{l=1}^{n-2} g~_l + c^{2N} g~_{n-1}.
// Requires K+ = 1 and K- in {1, D1, D2, D3, D4}.
RatFunc pseudo_vacuum_eigenvalue(const ChainContext& ctx);
// The individual g~_l(l), l = 0..n-1.
std::vector<RatFunc> boundary_g(const ChainContext& ctx);
// Bare g_l of the K = 1 chain.
std::vector<RatFunc> bulk_g(const GradingSpec& s);

struct SpectrumRecord {
    cplx lambda;
    std::vector<cplx> eigenvalues;
    std::vector<double> residuals;          // ||t v - L v|| / ||v||
    std::vector<std::vector<int>> sectors;  // S^(1..k) per eigenvalue, empty if not resolved
    CMat eigenvectors;                      // columns, full space
};

// Dense diagonalization, block by block in the Cartan weight sectors when t
// preserves them (diagonal K), otherwise on the full space.
SpectrumRecord spectrum(const ChainContext& ctx, cplx lambda);

// d t / d l at l = 0 by central differences with Richardson pairing (h, h/2).
// Throws if the two estimates differ by more than `agree` (relative).
CMat hamiltonian(const ChainContext& ctx, double h = 1e-5, double agree = 1e-7);

// i t'(0) / t(0): hermitian for K = 1 (t(0) is a multiple of the identity there).
CMat normalized_hamiltonian(const ChainContext& ctx);

// S^(l) = sum_sites (E_ll - E_{lbar lbar}), l = 1..k (1-based).
std::vector<CMat> cartan_generators(const ChainContext& ctx);
// Weight of a basis state of the quantum space.
std::vector<int> basis_weight(const GradingSpec& s, int N, long long idx);

double max_abs(const CMat& a);

// Number of leading diagonal entries equal to K_11 (the D3 block size m).
int leading_block(const KSolution& k);
bool is_identity_k(const KSolution& k);

}  // namespace ospk
