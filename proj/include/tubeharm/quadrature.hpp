#pragma once

#include <vector>

namespace tubeharm::quadrature {

// Gauss-Legendre rule with n nodes on [a, b].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    GaussLegendre(int n, double a, double b);
};

// Uniform periodic (trapezoid) rule on [0, period): n equispaced nodes,
// weight period/n each.  Spectrally accurate for smooth periodic integrands.
struct PeriodicRule {
    std::vector<double> nodes;
    double weight;
    PeriodicRule(int n, double period);
};

} // namespace tubeharm::quadrature
