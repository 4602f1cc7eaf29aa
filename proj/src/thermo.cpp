#include "ospk/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace ospk {

namespace {

// Overflow-safe hyperbolic ratios at w >= 0, with h(a) = a w / 2.
// sinh h(a) / sinh h(b), a >= 0, b > 0; equals a/b at w = 0.
double shr(double a, double b, double w) {
    if (w < 1e-12) return a / b;
    return std::exp((a - b) * w / 2) * (-std::expm1(-a * w)) / (-std::expm1(-b * w));
}
// cosh h(a) / cosh h(b), b >= 0.
double chr(double a, double b, double w) {
    a = std::abs(a);
    return std::exp((a - b) * w / 2) * (1 + std::exp(-a * w)) / (1 + std::exp(-b * w));
}
double inv_ch(double a, double w) { return 2 * std::exp(-a * w / 2) / (1 + std::exp(-a * w)); }

// 0-based set index of the vector sea j (1-based) and of the spinor seas.
int plus_of(const KernelContext& c) { return c.k - 2; }
int minus_of(const KernelContext& c) { return c.k - 1; }

double xi_of(const KernelContext& c, const char* key) {
    auto it = c.xi.find(key);
    if (it == c.xi.end()) throw std::invalid_argument(std::string("missing boundary parameter ") + key);
    return it->second;
}

bool so4(const KernelContext& c) { return c.series == Series::SoEven && c.k == 2; }

}  // namespace

double a_hat(double x, double w) {
    if (x == 0) return 0;
    double v = std::exp(-std::abs(x) * std::abs(w) / 2);
    return x > 0 ? v : -v;
}

int sea_count(const KernelContext& ctx) { return ctx.k; }

std::string sea_label(const KernelContext& ctx, int sea) { return set_label(ctx.series, ctx.k, sea); }

void validate(const KernelContext& c) {
    if (c.k < 1) throw std::invalid_argument("rank must be >= 1");
    if (c.series == Series::SoEven && c.k < 2) throw std::invalid_argument("so(2k) needs k >= 2");
    for (const auto& h : c.holes)
        if (h.sea < 0 || h.sea >= c.k) throw std::invalid_argument("hole sea index out of range");
    switch (c.family) {
        case Family::CUSTOM: break;
        case Family::D1:
            if (c.series == Series::SoOdd) throw std::invalid_argument("D1 does not exist for so(2k+1)");
            xi_of(c, "xi");
            break;
        case Family::D2:
            if (c.series == Series::Sp) throw std::invalid_argument("D2 does not exist for sp(n)");
            xi_of(c, "xi1");
            break;
        case Family::D3: {
            int top = c.k - 1;
            if (c.m < 1 || c.m > top) throw std::invalid_argument("D3 density terms are given for 1 <= m <= k-1");
            if (!(c.series == Series::SoEven && c.m == c.k - 1)) xi_of(c, "xi");
            break;
        }
        case Family::D4:
            if (!so4(c)) throw std::invalid_argument("D4 exists only for so(4)");
            xi_of(c, "xi2");
            xi_of(c, "xi3");
            break;
        default: throw std::invalid_argument("no density equations for family " + to_string(c.family));
    }
}

Eigen::MatrixXd kernel_hat(const KernelContext& c, double w) {
    int k = c.k;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k, k);
    double a1 = a_hat(1, w), a2 = a_hat(2, w);
    switch (c.series) {
        case Series::SoOdd:
            for (int i = 0; i < k - 1; ++i) {
                K(i, i) = 1 + a2;
                if (i + 1 < k - 1) K(i, i + 1) = K(i + 1, i) = -a1;
            }
            if (k >= 2) K(k - 2, k - 1) = K(k - 1, k - 2) = -(a_hat(0.5, w) + a_hat(1.5, w));
            K(k - 1, k - 1) = 1 + 2 * a1 + a2;
            break;
        case Series::SoEven: {
            int p = plus_of(c), q = minus_of(c);
            for (int i = 0; i < k - 2; ++i) {
                K(i, i) = 1 + a2;
                if (i + 1 < k - 2) K(i, i + 1) = K(i + 1, i) = -a1;
            }
            if (k >= 3) K(k - 3, p) = K(p, k - 3) = K(k - 3, q) = K(q, k - 3) = -a1;
            K(p, p) = K(q, q) = 1 + a2;
            break;
        }
        case Series::Sp: {
            double a13 = a1 + a_hat(3, w);
            for (int i = 0; i < k - 1; ++i) {
                K(i, i) = (1 + a2) * (1 + a2);
                if (i + 1 < k - 1) K(i, i + 1) = K(i + 1, i) = -a13;
            }
            if (k >= 2) K(k - 2, k - 1) = K(k - 1, k - 2) = -a13;
            K(k - 1, k - 1) = 1 + a_hat(4, w);
            break;
        }
    }
    return K;
}

Eigen::MatrixXd resolvent_hat(const KernelContext& c, double w) {
    w = std::abs(w);
    int k = c.k;
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(k, k);
    double e = std::exp(w / 2);
    switch (c.series) {
        case Series::SoOdd: {
            double cc = k - 0.5;
            for (int i = 1; i < k; ++i)
                for (int j = 1; j < k; ++j)
                    R(i - 1, j - 1) = e * shr(std::min(i, j), 1, w) * chr(cc - std::max(i, j), cc, w);
            for (int j = 1; j < k; ++j) R(j - 1, k - 1) = R(k - 1, j - 1) = e / 2 * shr(j, 1, w) * inv_ch(cc, w);
            R(k - 1, k - 1) = e / 4 * shr(k, 1, w) * inv_ch(0.5, w) * inv_ch(cc, w);
            break;
        }
        case Series::SoEven: {
            double cc = k - 1;
            int p = plus_of(c), q = minus_of(c);
            for (int i = 1; i <= k - 2; ++i)
                for (int j = 1; j <= k - 2; ++j)
                    R(i - 1, j - 1) = e * shr(std::min(i, j), 1, w) * chr(cc - std::max(i, j), cc, w);
            for (int j = 1; j <= k - 2; ++j) {
                double v = e / 2 * shr(j, 1, w) * inv_ch(cc, w);
                R(j - 1, p) = R(p, j - 1) = R(j - 1, q) = R(q, j - 1) = v;
            }
            R(p, p) = R(q, q) = e / 4 * shr(k, 1, w) * inv_ch(1, w) * inv_ch(cc, w);
            R(p, q) = R(q, p) = e / 4 * shr(k - 2, 1, w) * inv_ch(1, w) * inv_ch(cc, w);
            break;
        }
        case Series::Sp: {
            double cc = k + 1;
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= k; ++j)
                    R(i - 1, j - 1) = std::exp(w) / 2 * inv_ch(1, w) * shr(std::min(i, j), 1, w) * chr(cc - std::max(i, j), cc, w);
            break;
        }
    }
    return R;
}

Eigen::VectorXd driving_hat(const KernelContext& c, double w) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(c.k);
    if (c.series == Series::Sp) {
        a(0) = 2 * a_hat(2, w);
    } else if (so4(c)) {
        a(0) = a(1) = 2 * a_hat(1, w);
    } else {
        a(0) = 2 * a_hat(1, w);
    }
    return a;
}

Eigen::VectorXd hole_energy_hat(const KernelContext& c, double w) {
    if (c.k < 2) throw std::invalid_argument("closed-form hole energies are not used for k = 1 (first sea = k-th sea)");
    w = std::abs(w);
    int k = c.k;
    Eigen::VectorXd eps(k);
    switch (c.series) {
        case Series::SoOdd: {
            double cc = k - 0.5;
            for (int j = 1; j < k; ++j) eps(j - 1) = chr(cc - j, cc, w);
            eps(k - 1) = inv_ch(cc, w) / 2;
            break;
        }
        case Series::SoEven: {
            double cc = k - 1;
            for (int j = 1; j <= k - 2; ++j) eps(j - 1) = chr(cc - j, cc, w);
            eps(plus_of(c)) = eps(minus_of(c)) = inv_ch(cc, w) / 2;
            break;
        }
        case Series::Sp: {
            double cc = k + 1;
            for (int j = 1; j <= k; ++j) eps(j - 1) = chr(cc - j, cc, w) * inv_ch(1, w) / 2;
            break;
        }
    }
    return eps;
}

Eigen::VectorXd hole_energy_from_resolvent(const KernelContext& c, double w) {
    return resolvent_hat(c, w) * driving_hat(c, w) / 2;
}

DensityCorrection density_correction_hat(const KernelContext& c, double w) {
    validate(c);
    int k = c.k;
    auto a = [&](double x) { return a_hat(x, w); };
    Eigen::VectorXd F = Eigen::VectorXd::Zero(k), G = Eigen::VectorXd::Zero(k);

    // Constant (no-hole) part.
    switch (c.series) {
        case Series::SoOdd: {
            double half = a(0.5) + a(1.5);
            for (int j = 1; j <= k - 2; ++j) F(j - 1) = (j == 1 ? a(1) : 0.0) - a(1) + a(2);
            if (k >= 2) F(k - 2) = a(2) - half;
            F(k - 1) = 3 * a(1) + a(2) - half;
            break;
        }
        case Series::SoEven:
            if (k == 2) {
                F(0) = F(1) = a(1) + a(2);
            } else {
                for (int j = 1; j <= k - 3; ++j) F(j - 1) = (j == 1 ? a(1) : 0.0) - a(1) + a(2);
                F(k - 3) = a(2) - 2 * a(1);
                F(plus_of(c)) = F(minus_of(c)) = a(2);
            }
            break;
        case Series::Sp: {
            double a13 = a(1) + a(3);
            for (int j = 1; j <= k - 1; ++j) F(j - 1) = 3 * a(2) + a(4) - 2 * a13 + (j == 1 ? a13 : 0.0);
            F(k - 1) = a(2) + a(4) - a13;
            break;
        }
    }

    // Holes: a hole at l~ in sea l adds (K^_{jl} - delta_{jl}) (e^{i w l~} + e^{-i w l~}).
    if (!c.holes.empty()) {
        Eigen::MatrixXd K = kernel_hat(c, w);
        for (const auto& h : c.holes) {
            double ph = 2 * std::cos(w * h.rapidity);
            for (int j = 0; j < k; ++j) F(j) += (K(j, h.sea) - (j == h.sea ? 1.0 : 0.0)) * ph;
        }
    }

    // Boundary part.
    switch (c.family) {
        case Family::CUSTOM: break;
        case Family::D1: {
            double kap = c.series == Series::Sp ? k + 1 : k - 1;
            int s = c.series == Series::SoEven ? plus_of(c) : k - 1;
            G(s) = -a(2 * xi_of(c, "xi") + kap);
            break;
        }
        case Family::D2: {
            double g = -a(2 * xi_of(c, "xi1") + 1);
            G(0) = g;
            if (so4(c)) G(1) = g;
            break;
        }
        case Family::D3:
            if (c.series == Series::SoEven && c.m == k - 1) {
                G(plus_of(c)) = G(minus_of(c)) = -a(1);
            } else if (c.series == Series::Sp) {
                double x = 2 * xi_of(c, "xi") + c.m;
                G(c.m - 1) = -(a(x + 1) + a(x - 1));
            } else {
                G(c.m - 1) = -a(2 * xi_of(c, "xi") + c.m);
            }
            break;
        case Family::D4:
            G(0) = -a(2 * xi_of(c, "xi3") + 1);  // (+) carries xi_+
            G(1) = -a(2 * xi_of(c, "xi2") + 1);
            break;
        default: break;
    }

    Eigen::MatrixXd R = resolvent_hat(c, w);
    return {F, G, R * F, R * G};
}

}  // namespace ospk
