#pragma once

#include <optional>
#include <stdexcept>

namespace tubeharm::tubegeom {

inline constexpr double default_margulis_eps = 0.29;

// Margulis tube: metric dr^2 + sinh^2 r dtheta^2 + cosh^2 r dz^2 on
// [0,R] x S^1 x [0,lambda] with the twisted gluing
// (r, theta, lambda) ~ (r, theta + theta0, 0).
struct TubeParams {
    double lambda = 1.0; // core geodesic length, > 0
    double theta0 = 0.0; // twist angle; kept un-reduced (it enters mode frequencies)
    double R = 1.0;      // tube radius, > 0

    void validate() const {
        if (!(lambda > 0.0) || !(R > 0.0))
            throw std::domain_error("tube requires lambda > 0 and R > 0");
    }
};

struct TubePoint {
    double r = 0.0;
    double theta = 0.0; // canonical in [0, 2*pi)
    double z = 0.0;     // canonical in [0, lambda)
};

struct MetricWeights {
    double g_rr = 1.0;
    double g_theta = 0.0; // sinh^2 r
    double g_zz = 1.0;    // cosh^2 r
};

MetricWeights metric_weights(double r);

// pi * lambda * sinh^2 R
double tube_volume(const TubeParams& t);

// 2*pi*(cosh r - 1)
double disk_area(double r);

// 2*pi*lambda*sinh R*cosh R; equals d/dR of tube_volume
double boundary_torus_area(const TubeParams& t);

// arccosh(eps / sqrt(7.256*lambda)); nullopt when the bound is vacuous
// (argument below 1).
std::optional<double> min_tube_radius(double lambda,
                                      double margulis_eps = default_margulis_eps);

// Reduce z mod lambda, adding theta0 per full period, then reduce theta
// mod 2*pi.  Idempotent.
TubePoint canonicalize(const TubeParams& t, double r, double theta, double z);

} // namespace tubeharm::tubegeom
