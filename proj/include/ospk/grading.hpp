#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace ospk {

// Vector-representation data of so(m), sp(n) or osp(m|n). Indices are 0-based
// internally; 1-based only in docs and JSON (see to_external/from_external).
class GradingSpec {
public:
    GradingSpec(int m, int n, int theta0);

    int m() const { return m_; }
    int n() const { return n_; }
    int theta0() const { return theta0_; }
    int dim() const { return m_ + n_; }
    const mpq_class& kappa() const { return kappa_; }

    bool odd(int i) const { return odd_[i]; }
    int sign(int i) const { return odd_[i] ? -1 : 1; }  // (-1)^{[i]}
    int theta(int i) const { return theta_[i]; }
    int bar(int i) const { return bar_[i]; }
    bool is_pure_so() const { return n_ == 0; }
    bool is_pure_sp() const { return m_ == 0; }
    bool in_so_block(int i) const { return i < m_; }
    bool all_even() const;

    // "so:4", "sp:2", "osp:4:2", "osp:2:2:-1"
    std::string descriptor() const;
    std::string pretty() const;  // "so(4)", "osp(2|4)"

    friend bool operator==(const GradingSpec& a, const GradingSpec& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.theta0_ == b.theta0_;
    }
    friend bool operator!=(const GradingSpec& a, const GradingSpec& b) { return !(a == b); }

private:
    int m_, n_, theta0_;
    mpq_class kappa_;
    std::vector<bool> odd_;
    std::vector<int> theta_, bar_;
};

GradingSpec build_grading(int m, int n, int theta0);
// Throws std::invalid_argument on malformed descriptors.
GradingSpec parse_algebra(const std::string& descriptor);

inline int to_external(int i) { return i + 1; }
inline int from_external(int i) { return i - 1; }

// The algebra set used by the exact identity checks.
std::vector<GradingSpec> catalog_algebras();

}  // namespace ospk
