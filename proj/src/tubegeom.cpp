#include "tubeharm/tubegeom.hpp"

#include <cmath>
#include <numbers>

namespace tubeharm::tubegeom {

using std::numbers::pi;

MetricWeights metric_weights(double r) {
    if (r < 0.0)
        throw std::domain_error("metric_weights requires r >= 0");
    const double sh = std::sinh(r);
    const double ch = std::cosh(r);
    return {1.0, sh * sh, ch * ch};
}

double tube_volume(const TubeParams& t) {
    t.validate();
    const double sh = std::sinh(t.R);
    return pi * t.lambda * sh * sh;
}

double disk_area(double r) {
    if (r < 0.0)
        throw std::domain_error("disk_area requires r >= 0");
    return 2.0 * pi * (std::cosh(r) - 1.0);
}

double boundary_torus_area(const TubeParams& t) {
    t.validate();
    return 2.0 * pi * t.lambda * std::sinh(t.R) * std::cosh(t.R);
}

std::optional<double> min_tube_radius(double lambda, double margulis_eps) {
    if (!(lambda > 0.0))
        throw std::domain_error("min_tube_radius requires lambda > 0");
    const double arg = margulis_eps / std::sqrt(7.256 * lambda);
    if (arg < 1.0)
        return std::nullopt;
    return std::acosh(arg);
}

TubePoint canonicalize(const TubeParams& t, double r, double theta, double z) {
    t.validate();
    if (!(r >= 0.0 && r <= t.R))
        throw std::domain_error("canonicalize requires r in [0, R]");

    const double periods = std::floor(z / t.lambda);
    double zc = z - periods * t.lambda;
    double th = theta + periods * t.theta0;
    if (zc >= t.lambda) { // guard against floating roundoff at the seam
        zc -= t.lambda;
        th += t.theta0;
    }
    const double two_pi = 2.0 * pi;
    th -= std::floor(th / two_pi) * two_pi;
    if (th >= two_pi)
        th -= two_pi;
    return {r, th, zc};
}

} // namespace tubeharm::tubegeom
