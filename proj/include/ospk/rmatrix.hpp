#pragma once

#include "ospk/graded.hpp"
#include "ospk/mpoly.hpp"
#include "ospk/ratfunc.hpp"
#include "ospk/report.hpp"

namespace ospk {

enum class Normalization {
    RationalU,      // R(u) = I + P/u - Q/(u+kappa)
    PhysicalLambda  // R(l) = l(l+i kappa) I + i(l+i kappa) P - i l Q
};

std::string to_string(Normalization n);

struct RMatrixHandle {
    GradingSpec spec;
    Normalization norm;
    GMat<RatFunc> matrix;  // entries in the single spectral variable
};

RMatrixHandle r_matrix(const GradingSpec& s, Normalization norm);

// Polynomial R with an arbitrary polynomial argument x. For the rational
// normalization the denominators are cleared: x(x+kappa) I + (x+kappa) P - x Q.
// `flip_q` flips the sign of the Q term (negative control).
GMat<MPoly> r_poly(const GradingSpec& s, Normalization norm, const MPoly& x, bool flip_q = false);

// Describes the first nonzero entry of a residual, or nullopt if it vanishes.
std::optional<std::string> first_witness(const GMat<MPoly>& residual, const std::vector<std::string>& names = {"u", "v"});
int max_entry_degree(const GMat<MPoly>& a);

// P^2 = I, PQ = QP = theta0 Q, Q^2 = theta0 (m - n) Q, exactly.
VerifyReport verify_pq_algebra(const GradingSpec& s);

VerifyReport verify_ybe(const GradingSpec& s, bool flip_q = false);
// R(l)R(-l) = (l^2+kappa^2)(l^2+1) I and R(l) = R^{t1}(-l-i kappa), physical normalization.
VerifyReport verify_crossing_unitarity(const GradingSpec& s);
// R^{t1 t2} = R (rational normalization, cleared form).
VerifyReport verify_double_transpose(const GradingSpec& s);

}  // namespace ospk
