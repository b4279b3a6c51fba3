#pragma once

#include "tubeharm/hypergeom.hpp"
#include "tubeharm/tubegeom.hpp"

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

namespace tubeharm::harmonics {

using tubegeom::TubeParams;
using tubegeom::TubePoint;

// One harmonic mode h_km(r) * [a sin(k theta + w z) + a' cos(k theta + w z)]
// with w = 2 pi m / lambda + k theta0 / lambda.  The (0,0) mode is carried by
// the field's constant term, never by a Mode.
struct Mode {
    int k = 0;
    int m = 0;
    double a = 0.0;
    double a_prime = 0.0;
};

struct HarmonicField {
    TubeParams tube;
    double c0 = 0.0;
    std::vector<Mode> modes;

    void validate() const;
};

struct CoframeComponents {
    double f_r = 0.0;
    double f_theta = 0.0;
    double f_z = 0.0;
};

struct QuadratureSpec {
    int n_r = 64;
    int n_theta = 64;
    int n_z = 64;
    double tol = 1e-8;
};

class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mode frequency parameters: d = m*pi/lambda + k*theta0/(2*lambda), w = 2d.
double mode_d(const TubeParams& t, int k, int m);
double mode_omega(const TubeParams& t, int k, int m);

// h_km(r) = tanh^k r * 2F1(k/2+id, k/2-id; 1+k; tanh^2 r); h_00 == 1.
double radial_value(const TubeParams& t, int k, int m, double r, double tol = 1e-12);
double radial_log_value(const TubeParams& t, int k, int m, double r, double tol = 1e-12);
// dh_km/dr (>= 0, zero at r = 0 for k != 1).
double radial_deriv_r(const TubeParams& t, int k, int m, double r, double tol = 1e-12);
// Logarithmic derivative h'/h, finite for r > 0.
double radial_log_deriv(const TubeParams& t, int k, int m, double r, double tol = 1e-12);

// log h_0m and h'/h for k = 0 along an ascending positive radius grid.
// Dispatches between the direct series and, when the series would need too
// many terms (large d * sinh r), integration of the Riccati equation
// rho' = -rho^2 - 2 rho cosh(2r)/sinh(2r) + 4 d^2 sech^2 r satisfied by
// rho = h'/h, started on the small-r Bessel branch rho = 2d I1(2dr)/I0(2dr).
struct RadialProfile {
    std::vector<double> log_h;
    std::vector<double> rho;
};
RadialProfile radial_profile_k0(double d, std::span<const double> radii,
                                double tol = 1e-10);
// The two underlying paths, exposed for cross-validation.
RadialProfile series_profile_k0(double d, std::span<const double> radii, double tol);
RadialProfile riccati_profile_k0(double d, std::span<const double> radii);

double eval_f(const HarmonicField& f, const TubePoint& p);
CoframeComponents eval_df(const HarmonicField& f, const TubePoint& p);
// Pointwise |df| = sqrt(f_r^2 + f_theta^2/sinh^2 r + f_z^2/cosh^2 r),
// continuous through r = 0.
double df_pointwise_norm(const HarmonicField& f, const TubePoint& p);

// Residual of d/dr(f_r sinh r cosh r) + f_tt cosh r/sinh r + f_zz sinh r/cosh r
// by 4th-order central differences of the scalar field, Richardson-extrapolated
// once (step and step/2).  The functor overload enables negative controls.
double laplacian_residual(const std::function<double(double, double, double)>& f,
                          const TubeParams& t, const TubePoint& p, double step);
double laplacian_residual(const HarmonicField& f, const TubePoint& p, double step);
// Magnitude of the largest single term of the operator, for relative error.
double laplacian_scale(const std::function<double(double, double, double)>& f,
                       const TubeParams& t, const TubePoint& p, double step);

// Relative residual of the radial ODE
// (1/2) d/dr(h' sinh 2r)/h - k^2 cosh r/sinh r - w^2 sinh r/cosh r,
// normalized by the largest term; uses analytic series derivatives in
// log space so arbitrarily large h are fine.
double ode_residual(const TubeParams& t, int k, int m, double r, double tol = 1e-12);

// ||df||^2 by the Stokes boundary formula:
// sum over modes of pi*lambda*(a^2+a'^2)*sinh R*cosh R*h(R)*h'(R).
double l2_df_boundary(const HarmonicField& f, double tol = 1e-12);
// ||df||^2 by tensor-product quadrature (Gauss-Legendre radially, uniform
// periodic rules in theta and z).  Throws ResolutionError when the angular or
// longitudinal sampling cannot resolve the mode oscillation.
double l2_df_volume(const HarmonicField& f, const QuadratureSpec& q);
// Grid supremum of |df| over [0,R] x [0,2pi) x [0,lambda).
double linf_df(const HarmonicField& f, const QuadratureSpec& grid);

enum class FluxMethod { closed_form, quadrature };
// Flux of grad f through the totally geodesic disk {z = z0}:
// int f_z tanh r dr dtheta.  Only k = 0 modes contribute; closed form per
// mode is 2 pi w (lambda^2/(8 pi^2 m^2)) h'(R) sinh(2R) (a cos(w z0) - a' sin(w z0)).
double flux_disk(const HarmonicField& f, double z0, FluxMethod method,
                 const QuadratureSpec& q = {});

// Flux of grad f through the invariant annulus
// A = {(r0, theta, z): theta in [-z theta0/lambda, eta - z theta0/lambda], z in [0,lambda]}.
double flux_invariant_annulus(const HarmonicField& f, double eta, double r0,
                              const QuadratureSpec& q = {});

// (dz wedge *df + *dz wedge df)/2 integrated over the tube, i.e. the L^2
// pairing <dz, df>; vanishes for harmonic fields with no z-constant modes.
double inner_dz_df(const HarmonicField& f, const QuadratureSpec& q);

// ||(kappa/lambda) dz||^2 = kappa^2 (2 pi/lambda) log cosh R.
double dz_l2_sq(const TubeParams& t, double kappa);
double dz_l2_sq_quadrature(const TubeParams& t, double kappa, const QuadratureSpec& q);
// ||(kappa/lambda) dz + df||^2 by quadrature, for the orthogonal-decomposition check.
double l2_combined_volume(const HarmonicField& f, double kappa, const QuadratureSpec& q);

void to_json(nlohmann::json& j, const Mode& m);
void from_json(const nlohmann::json& j, Mode& m);
void to_json(nlohmann::json& j, const HarmonicField& f);
void from_json(const nlohmann::json& j, HarmonicField& f);

} // namespace tubeharm::harmonics
