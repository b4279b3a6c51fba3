#include "tubeharm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubeharm::quadrature {

GaussLegendre::GaussLegendre(int n, double a, double b) {
    if (n < 1)
        throw std::domain_error("Gauss-Legendre rule needs n >= 1");
    nodes.resize(n);
    weights.resize(n);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, polished by Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
        nodes[i] = mid - halfw * x;
        nodes[n - 1 - i] = mid + halfw * x;
        weights[i] = weights[n - 1 - i] = halfw * w;
    }
}

PeriodicRule::PeriodicRule(int n, double period) {
    if (n < 1)
        throw std::domain_error("periodic rule needs n >= 1");
    nodes.resize(n);
    for (int i = 0; i < n; ++i)
        nodes[i] = period * i / n;
    weight = period / n;
}

} // namespace tubeharm::quadrature
