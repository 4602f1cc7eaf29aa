#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ospk {

inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

// Row-major sparse matrix; rows are ordered maps so iteration is deterministic.
// T needs T(long), +, -, *, and an is_zero(const T&) overload.
template <class T>
class SpMat {
public:
    using Row = std::map<int, T>;

    SpMat() = default;
    SpMat(int rows, int cols) : cols_(cols), r_(rows) {}
    explicit SpMat(int n) : SpMat(n, n) {}

    static SpMat identity(int n) {
        SpMat a(n);
        for (int i = 0; i < n; ++i) a.r_[i].emplace(i, T(1));
        return a;
    }

    int rows() const { return static_cast<int>(r_.size()); }
    int cols() const { return cols_; }
    const Row& row(int i) const { return r_[i]; }
    std::size_t nnz() const {
        std::size_t s = 0;
        for (const auto& r : r_) s += r.size();
        return s;
    }
    bool is_zero_matrix() const {
        for (const auto& r : r_)
            if (!r.empty()) return false;
        return true;
    }

    T get(int i, int j) const {
        auto it = r_[i].find(j);
        return it == r_[i].end() ? T(0) : it->second;
    }
    void set(int i, int j, const T& v) {
        if (is_zero(v))
            r_[i].erase(j);
        else
            r_[i][j] = v;
    }
    void add(int i, int j, const T& v) {
        if (is_zero(v)) return;
        auto it = r_[i].find(j);
        if (it == r_[i].end()) {
            r_[i].emplace(j, v);
        } else {
            it->second = it->second + v;
            if (is_zero(it->second)) r_[i].erase(it);
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (int i = 0; i < rows(); ++i)
            for (const auto& [j, v] : r_[i]) f(i, j, v);
    }

    // Entry-wise map into another scalar type.
    template <class U, class F>
    SpMat<U> map(F&& f) const {
        SpMat<U> out(rows(), cols_);
        for_each([&](int i, int j, const T& v) { out.set(i, j, f(v)); });
        return out;
    }

    SpMat operator-() const {
        SpMat out = *this;
        for (auto& r : out.r_)
            for (auto& [j, v] : r) v = T(0) - v;
        return out;
    }
    SpMat& operator+=(const SpMat& o) {
        check_same(o);
        o.for_each([&](int i, int j, const T& v) { add(i, j, v); });
        return *this;
    }
    SpMat& operator-=(const SpMat& o) {
        check_same(o);
        o.for_each([&](int i, int j, const T& v) { add(i, j, T(0) - v); });
        return *this;
    }
    friend SpMat operator+(SpMat a, const SpMat& b) { return a += b; }
    friend SpMat operator-(SpMat a, const SpMat& b) { return a -= b; }

    friend SpMat operator*(const SpMat& a, const SpMat& b) {
        if (a.cols_ != b.rows()) throw std::invalid_argument("SpMat: shape mismatch in product");
        SpMat out(a.rows(), b.cols_);
        for (int i = 0; i < a.rows(); ++i) {
            Row acc;
            for (const auto& [k, x] : a.r_[i]) {
                for (const auto& [j, y] : b.r_[k]) {
                    T p = x * y;
                    auto it = acc.find(j);
                    if (it == acc.end())
                        acc.emplace(j, std::move(p));
                    else
                        it->second = it->second + p;
                }
            }
            for (auto it = acc.begin(); it != acc.end();) {
                if (is_zero(it->second))
                    it = acc.erase(it);
                else
                    ++it;
            }
            out.r_[i] = std::move(acc);
        }
        return out;
    }

    SpMat scaled(const T& s) const {
        SpMat out(rows(), cols_);
        for_each([&](int i, int j, const T& v) { out.set(i, j, v * s); });
        return out;
    }

    SpMat transpose() const {
        SpMat out(cols_, rows());
        for_each([&](int i, int j, const T& v) { out.r_[j].emplace(i, v); });
        return out;
    }

    friend bool operator==(const SpMat& a, const SpMat& b) { return a.cols_ == b.cols_ && a.r_ == b.r_; }
    friend bool operator!=(const SpMat& a, const SpMat& b) { return !(a == b); }

private:
    void check_same(const SpMat& o) const {
        if (o.rows() != rows() || o.cols_ != cols_) throw std::invalid_argument("SpMat: shape mismatch");
    }
    int cols_ = 0;
    std::vector<Row> r_;
};

}  // namespace ospk
