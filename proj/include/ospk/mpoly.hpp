#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ospk/gaussq.hpp"
#include "ospk/upoly.hpp"

namespace ospk {

// Sparse multivariate polynomial over Q(i). Variable 0 and 1 are the spectral
// parameters (u, v) by convention; higher indices hold symbolic parameters.
class MPoly {
public:
    static constexpr int kMaxVars = 16;
    using Mono = std::array<std::uint8_t, kMaxVars>;

    MPoly() = default;
    MPoly(const GaussQ& c) {  // NOLINT
        if (!c.is_zero()) t_[Mono{}] = c;
    }
    MPoly(long c) : MPoly(GaussQ(c)) {}  // NOLINT
    static MPoly var(int k);
    // q(expr) for a univariate q, e.g. R(u - v)
    static MPoly from_upoly(const QPoly& q, const MPoly& x);

    bool is_zero() const { return t_.empty(); }
    const std::map<Mono, GaussQ>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    int total_degree() const;
    int degree_in(int k) const;
    bool depends_on(int k) const { return degree_in(k) > 0; }

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    MPoly pow(int k) const;
    MPoly scaled(const GaussQ& s) const;

    // Replace variable k by the polynomial e.
    MPoly substitute(int k, const MPoly& e) const;
    // Replace variable k by a constant.
    MPoly substitute(int k, const GaussQ& c) const;
    // Coefficients of the monomials in the listed variables; the result polynomials
    // only involve the remaining variables.
    std::map<std::vector<int>, MPoly> coefficients_in(const std::vector<int>& vars) const;
    // Univariate view in variable k (throws if other variables appear).
    QPoly to_upoly(int k) const;
    // Bivariate view: variable iu is the inner variable u, iv the outer v.
    QPoly2 to_qpoly2(int iu, int iv) const;

    GaussQ eval_exact(const std::vector<GaussQ>& point) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    std::map<Mono, GaussQ> t_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

}  // namespace ospk
