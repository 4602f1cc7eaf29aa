#pragma once

#include <stdexcept>
#include <vector>

#include "ospk/grading.hpp"
#include "ospk/spmat.hpp"

namespace ospk {

// Matrix of an operator on F graded tensor factors. Entry ((i1..iF),(j1..jF)) is the
// coefficient of E_{i1 j1} (x) ... (x) E_{iF jF} times the Koszul sign
// prod_{a<b} (-1)^{([i_a]+[j_a])[i_b]}, so graded products become matrix products.
// Factor 1 is the most significant digit of the flattened index.
template <class T>
struct GMat {
    GradingSpec spec;
    int factors;
    SpMat<T> m;

    GMat(const GradingSpec& s, int f, SpMat<T> mat) : spec(s), factors(f), m(std::move(mat)) {}
    GMat(const GradingSpec& s, int f) : spec(s), factors(f), m(pow_dim(s, f)) {}

    static int pow_dim(const GradingSpec& s, int f) {
        int n = 1;
        for (int k = 0; k < f; ++k) n *= s.dim();
        return n;
    }
    static GMat identity(const GradingSpec& s, int f) { return GMat(s, f, SpMat<T>::identity(pow_dim(s, f))); }

    friend GMat operator*(const GMat& a, const GMat& b) {
        check(a, b);
        return GMat(a.spec, a.factors, a.m * b.m);
    }
    friend GMat operator+(const GMat& a, const GMat& b) {
        check(a, b);
        return GMat(a.spec, a.factors, a.m + b.m);
    }
    friend GMat operator-(const GMat& a, const GMat& b) {
        check(a, b);
        return GMat(a.spec, a.factors, a.m - b.m);
    }
    GMat scaled(const T& s) const { return GMat(spec, factors, m.scaled(s)); }
    friend bool operator==(const GMat& a, const GMat& b) { return a.spec == b.spec && a.factors == b.factors && a.m == b.m; }

private:
    static void check(const GMat& a, const GMat& b) {
        if (a.spec != b.spec || a.factors != b.factors) throw std::invalid_argument("GMat: spec or factor-count mismatch");
    }
};

namespace detail {

inline std::vector<int> digits(int idx, int f, int d) {
    std::vector<int> out(f);
    for (int k = f - 1; k >= 0; --k) {
        out[k] = idx % d;
        idx /= d;
    }
    return out;
}

inline int undigits(const std::vector<int>& ds, int d) {
    int idx = 0;
    for (int x : ds) idx = idx * d + x;
    return idx;
}

}  // namespace detail

// prod_{a<b} (-1)^{([i_a]+[j_a])[i_b]}
inline int koszul_sign(const GradingSpec& s, const std::vector<int>& I, const std::vector<int>& J) {
    int odd_so_far = 0;
    int sg = 1;
    for (std::size_t b = 0; b < I.size(); ++b) {
        if (s.odd(I[b]) && (odd_so_far & 1)) sg = -sg;
        odd_so_far += static_cast<int>(s.odd(I[b])) + static_cast<int>(s.odd(J[b]));
    }
    return sg;
}

template <class T>
GMat<T> elementary(const GradingSpec& s, int i, int j, const T& v = T(1)) {
    GMat<T> a(s, 1);
    a.m.set(i, j, v);
    return a;
}

// Graded tensor product of two operators; factor counts add.
template <class T>
GMat<T> graded_kron(const GMat<T>& a, const GMat<T>& b) {
    if (a.spec != b.spec) throw std::invalid_argument("graded_kron: spec mismatch");
    const GradingSpec& s = a.spec;
    int d = s.dim();
    int f = a.factors + b.factors;
    GMat<T> out(s, f);
    int nb = GMat<T>::pow_dim(s, b.factors);
    a.m.for_each([&](int ia, int ja, const T& x) {
        auto I = detail::digits(ia, a.factors, d), J = detail::digits(ja, a.factors, d);
        T ca = koszul_sign(s, I, J) < 0 ? T(0) - x : x;
        b.m.for_each([&](int ib, int jb, const T& y) {
            auto K = detail::digits(ib, b.factors, d), L = detail::digits(jb, b.factors, d);
            T cb = koszul_sign(s, K, L) < 0 ? T(0) - y : y;
            std::vector<int> IK = I, JL = J;
            IK.insert(IK.end(), K.begin(), K.end());
            JL.insert(JL.end(), L.begin(), L.end());
            T v = ca * cb;
            if (koszul_sign(s, IK, JL) < 0) v = T(0) - v;
            out.m.add(ia * nb + ib, ja * nb + jb, v);
        });
    });
    return out;
}

// Transposition t on factor p (0-based): E_ij -> (-1)^{[i][j]+[j]} theta_i theta_j E_{jbar ibar}.
template <class T>
GMat<T> partial_transpose(const GMat<T>& a, int p) {
    const GradingSpec& s = a.spec;
    int d = s.dim();
    GMat<T> out(s, a.factors);
    a.m.for_each([&](int r, int c, const T& x) {
        auto I = detail::digits(r, a.factors, d), J = detail::digits(c, a.factors, d);
        int sg = koszul_sign(s, I, J);
        int i = I[p], j = J[p];
        sg *= (s.odd(i) && s.odd(j)) ? -1 : 1;
        sg *= s.sign(j) * s.theta(i) * s.theta(j);
        I[p] = s.bar(j);
        J[p] = s.bar(i);
        sg *= koszul_sign(s, I, J);
        out.m.add(detail::undigits(I, d), detail::undigits(J, d), sg < 0 ? T(0) - x : x);
    });
    return out;
}

template <class T>
GMat<T> super_transpose(const GMat<T>& a) {
    if (a.factors != 1) throw std::invalid_argument("super_transpose: expects a single factor; use partial_transpose");
    return partial_transpose(a, 0);
}

// Places a two-factor operator on factors (p, q) of an F-factor space, identity elsewhere.
// p > q is allowed and means the first tensor leg of `a` sits on factor p.
template <class T>
GMat<T> embed(const GMat<T>& a, int f, int p, int q) {
    if (a.factors != 2) throw std::invalid_argument("embed: expects a two-factor operator");
    if (p == q || p < 0 || q < 0 || p >= f || q >= f) throw std::invalid_argument("embed: bad factor positions");
    const GradingSpec& s = a.spec;
    int d = s.dim();
    GMat<T> out(s, f);
    int rest = GMat<T>::pow_dim(s, f - 2);
    a.m.for_each([&](int r, int c, const T& x) {
        auto I = detail::digits(r, 2, d), J = detail::digits(c, 2, d);
        int sg = koszul_sign(s, I, J);
        if (p > q) {
            bool o1 = s.odd(I[0]) != s.odd(J[0]);
            bool o2 = s.odd(I[1]) != s.odd(J[1]);
            if (o1 && o2) sg = -sg;
        }
        for (int k = 0; k < rest; ++k) {
            auto M = detail::digits(k, f - 2, d);
            std::vector<int> R(f), C(f);
            for (int pos = 0, mk = 0; pos < f; ++pos) {
                if (pos == p) {
                    R[pos] = I[0];
                    C[pos] = J[0];
                } else if (pos == q) {
                    R[pos] = I[1];
                    C[pos] = J[1];
                } else {
                    R[pos] = C[pos] = M[mk++];
                }
            }
            int sg2 = sg * koszul_sign(s, R, C);
            out.m.add(detail::undigits(R, d), detail::undigits(C, d), sg2 < 0 ? T(0) - x : x);
        }
    });
    return out;
}

// Super permutation P = sum (-1)^{[j]} E_ij (x) E_ji.
template <class T>
GMat<T> make_P(const GradingSpec& s) {
    int d = s.dim();
    GMat<T> out(s, 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int sg = s.sign(j) * koszul_sign(s, {i, j}, {j, i});
            out.m.add(i * d + j, j * d + i, T(sg));
        }
    return out;
}

// Q = sum (-1)^{[i][j]} theta_i theta_j E_{jbar ibar} (x) E_{ji}  (= P^{t1}).
template <class T>
GMat<T> make_Q(const GradingSpec& s) {
    int d = s.dim();
    GMat<T> out(s, 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int sg = ((s.odd(i) && s.odd(j)) ? -1 : 1) * s.theta(i) * s.theta(j);
            std::vector<int> I{s.bar(j), j}, J{s.bar(i), i};
            sg *= koszul_sign(s, I, J);
            out.m.add(detail::undigits(I, d), detail::undigits(J, d), T(sg));
        }
    return out;
}

}  // namespace ospk
