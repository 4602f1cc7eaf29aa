#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace ospk {

// Exact element of Q(i): re + im*i with arbitrary-precision rationals.
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
    GaussQ(const mpq_class& re, const mpq_class& im = 0) : re_(re), im_(im) { canon(); }

    static GaussQ I() { return GaussQ(0, 1); }
    static GaussQ frac(long p, long q) {
        mpq_class r{mpz_class(p), mpz_class(q)};
        r.canonicalize();
        return GaussQ(r);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussQ conj() const { return GaussQ(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussQ inverse() const;

    GaussQ operator-() const { return GaussQ(-re_, -im_); }
    GaussQ& operator+=(const GaussQ& o);
    GaussQ& operator-=(const GaussQ& o);
    GaussQ& operator*=(const GaussQ& o);
    GaussQ& operator/=(const GaussQ& o);

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
    friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    explicit operator std::complex<double>() const { return to_complex(); }

    // "3/2", "-i", "1/2+3i". Parenthesize when used as a coefficient.
    std::string str() const;
    // Parses the forms produced by str() plus plain integers/fractions.
    static GaussQ parse(const std::string& s);

    // Total order used only for canonical sorting (re first, then im).
    friend bool operator<(const GaussQ& a, const GaussQ& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    void canon() { re_.canonicalize(); im_.canonicalize(); }
    mpq_class re_, im_;
};

inline bool is_zero(const GaussQ& x) { return x.is_zero(); }

// Continued-fraction recovery of a small rational from a double.
mpq_class rationalize(double x, double tol = 1e-10, long max_den = 100000);

}  // namespace ospk
