#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ospk/rmatrix.hpp"

namespace ospk {

struct BoundaryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Family { D1, D2, D3, D4, D5, ANTIDIAG, C1, C2, CUSTOM };

std::string to_string(Family f);
Family parse_family(const std::string& s);

// An exact boundary parameter: a Gaussian rational, the point at infinity, or a
// rational function (D5 entries).
struct Param {
    enum class Kind { Number, Infinity, Function };
    Kind kind = Kind::Number;
    GaussQ value;
    RatFunc fn;

    static Param number(const GaussQ& v) { return {Kind::Number, v, RatFunc()}; }
    static Param infinity() { return {Kind::Infinity, GaussQ(0), RatFunc()}; }
    static Param function(const RatFunc& f) { return {Kind::Function, GaussQ(0), f}; }
    // "oo", "inf" -> infinity; constants -> number; anything else -> function of u.
    static Param parse(const std::string& s);

    bool is_infinite() const { return kind == Kind::Infinity; }
    std::string str() const;
    friend bool operator==(const Param& a, const Param& b) {
        return a.kind == b.kind && a.value == b.value && a.fn == b.fn;
    }
};

using ParamMap = std::map<std::string, Param>;

struct KSolution {
    GradingSpec spec;
    Family family;
    ParamMap params;
    GMat<RatFunc> matrix;  // one tensor factor, entries in the spectral variable
    Normalization norm;
};

// (1+cu)/(1-cu), or -1 for c = infinity.
RatFunc f_of(const Param& c);

// Catalog constructor in the rational-u normalization. Checks admissibility and the
// family's algebraic constraint exactly; throws BoundaryError otherwise.
// Physical-style parameters (xi, xi1, xi2, xi3) are accepted and converted.
KSolution make_k(const GradingSpec& s, Family f, const ParamMap& params = {});
// Same shapes without admissibility or constraint checks (negative controls).
KSolution force_k(const GradingSpec& s, Family f, const ParamMap& params = {});
KSolution make_custom(const GradingSpec& s, const GMat<RatFunc>& m, Normalization norm);

// One representative parameter point per admissible (algebra, family) pair, including the
// osp(4|2) C1 display point k5 = 3/5, l5 = l6 = 4/5.
std::vector<KSolution> catalog_solutions();

// u = -i lambda, times the family scalar that makes the entries match the
// physical alpha/beta forms used by the chain (D1/D3: (-lambda + i xi), D4: the
// product of both, otherwise 1).
KSolution to_physical(const KSolution& k);
RatFunc physical_scalar(const KSolution& k);
// Boundary parameters xi in the chain conventions (xi = 1/c for D1/D3, xi1 = -1/c1
// and xi_n = -1/c_m for D2, xi2 = 1/c2 and xi3 = 1/c3 for D4).
std::map<std::string, GaussQ> physical_xi(const KSolution& k);

// Denominator-cleared K with spectral variable `var` of MPoly.
GMat<MPoly> k_poly(const GMat<RatFunc>& k, int var);

// R12(u-v) K1(u) R12(u+v) K2(v) - K2(v) R12(u+v) K1(u) R12(u-v), cleared.
GMat<MPoly> reflection_residual(const GradingSpec& s, const GMat<MPoly>& Ku, const GMat<MPoly>& Kv, Normalization norm);
// Distinct nonzero coefficient polynomials of the residual in u and v.
std::vector<MPoly> constraint_polys(const GMat<MPoly>& residual);

VerifyReport verify_reflection(const KSolution& k);
// R12(v-u) K1^{t1}(u) R12(-u-v-2i kappa) K2^{t2}(v) = K2^{t2}(v) R12(-u-v-2i kappa) K1^{t1}(u) R12(v-u),
// physical normalization.
VerifyReport verify_dual_reflection(const KSolution& kplus);

// K+(lambda) = K-(-lambda - i kappa)^t. Requires physical normalization.
KSolution dualize_k(const KSolution& kminus);

enum class TransformMode { Transpose, Conjugate, ConjugateTranspose };
// K^t, U K U^t or U K^t U^t. U must satisfy U U^t = 1 exactly.
KSolution transform_k(const KSolution& k, TransformMode mode, const GMat<GaussQ>* U = nullptr);
bool is_super_orthogonal(const GMat<GaussQ>& U);

// ---- classification ------------------------------------------------------

struct ClassifiedFamily {
    std::string family;                // D1, D2, D3, D4, D5, or "shape" for unexpected ones
    std::map<std::string, int> ints;   // m1, n1 for D3
    std::vector<std::string> params;   // symbolic parameter names
    std::vector<std::string> constraints;  // canonical constraint polynomials (empty: free)
    std::optional<std::string> fixed;  // e.g. "c=2" or "c=oo"
    std::vector<int> labels;           // class label per index (0: value 1, 1/2: f(c1)/f(c2), 3: -1)
    bool verified = false;
    std::string describe() const;
};

std::vector<ClassifiedFamily> classify_diagonal(const GradingSpec& s);

// Brute force over constant antidiagonal K = sum l_i E_{i ibar}: symbolic constraints, then
// a grid search with l_1 = 1 and the others in {+-1, +-2, +-1/2}. Returns the invertible
// solutions found (each a full l vector).
std::vector<std::vector<GaussQ>> antidiagonal_solutions(const GradingSpec& s);

// For a constant solution K0 and a diagonal direction D, the gcd (in the slope gamma) of the
// reflection constraints on K0 + gamma u D. A result gamma^k means only gamma = 0 survives.
QPoly mixed_slope_constraint(const KSolution& k0, const std::vector<GaussQ>& direction);

}  // namespace ospk
