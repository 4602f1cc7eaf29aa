#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ospk/bethe.hpp"

namespace ospk {

// Fourier convention f^(w) = int dl e^{i w l} f(l); a_x(l) = x / (2 pi (l^2 + x^2/4)) has
// a^_x(w) = e^{-x|w|/2}. Negative indices follow a_{-x} = -a_x, and a_0 = 0.
double a_hat(double x, double w);

struct Hole {
    int sea;          // set index, same labelling as the Bethe root sets
    double rapidity;  // real
};

// Sea indices follow BetheProblem: so(2k) seas 0..k-3 are the vector seas, k-2 is (+), k-1 is (-).
struct KernelContext {
    Series series = Series::SoOdd;
    int k = 1;
    Family family = Family::CUSTOM;  // CUSTOM means K- = 1
    std::map<std::string, double> xi;  // xi, xi1, xi2 (xi_-), xi3 (xi_+)
    int m = 0;                          // D3 block size
    std::vector<Hole> holes;
};

// Checks rank, family admissibility and the parameters the family needs.
void validate(const KernelContext& ctx);

int sea_count(const KernelContext& ctx);
std::string sea_label(const KernelContext& ctx, int sea);

Eigen::MatrixXd kernel_hat(const KernelContext& ctx, double w);
// Closed-form resolvent, evaluated at |w| (w = 0 by continuity).
Eigen::MatrixXd resolvent_hat(const KernelContext& ctx, double w);
// Driving term a^(w) of the density equation: 2 a^_1 on the seas adjacent to the
// quantum space (2 a^_2 for sp).
Eigen::VectorXd driving_hat(const KernelContext& ctx, double w);

// Closed-form hole energies. Throws for k = 1, where the closed form and R^ a^ / 2 disagree.
Eigen::VectorXd hole_energy_hat(const KernelContext& ctx, double w);
// R^(w) a^(w) / 2, defined for every rank.
Eigen::VectorXd hole_energy_from_resolvent(const KernelContext& ctx, double w);

struct DensityCorrection {
    Eigen::VectorXd F, G, phi0, phi1;
};
DensityCorrection density_correction_hat(const KernelContext& ctx, double w);

}  // namespace ospk
