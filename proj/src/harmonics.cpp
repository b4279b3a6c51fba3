#include "tubeharm/harmonics.hpp"
#include "tubeharm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tubeharm::harmonics {

using hypergeom::conj_series;
using hypergeom::SeriesResult;
using quadrature::GaussLegendre;
using quadrature::PeriodicRule;
using std::numbers::pi;

void HarmonicField::validate() const {
    tube.validate();
    for (const Mode& mo : modes) {
        if (mo.k < 0 || mo.m < 0)
            throw std::domain_error("mode indices must be non-negative");
        if (mo.k == 0 && mo.m == 0)
            throw std::domain_error("the (0,0) mode belongs in the constant term c0");
    }
}

double mode_d(const TubeParams& t, int k, int m) {
    t.validate();
    return m * pi / t.lambda + k * t.theta0 / (2.0 * t.lambda);
}

double mode_omega(const TubeParams& t, int k, int m) {
    return 2.0 * mode_d(t, k, m);
}

namespace {

double pow_int(double x, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= x;
    return out;
}

} // namespace

double radial_value(const TubeParams& t, int k, int m, double r, double tol) {
    if (k == 0 && m == 0) return 1.0;
    const double d = mode_d(t, k, m);
    const double th = std::tanh(r);
    const SeriesResult s = conj_series(0.5 * k, d, 1.0 + k, th * th, tol);
    return pow_int(th, k) * s.value;
}

double radial_log_value(const TubeParams& t, int k, int m, double r, double tol) {
    if (k == 0 && m == 0) return 0.0;
    const double d = mode_d(t, k, m);
    const double th = std::tanh(r);
    const SeriesResult s = conj_series(0.5 * k, d, 1.0 + k, th * th, tol);
    return k * std::log(th) + s.log_value;
}

double radial_deriv_r(const TubeParams& t, int k, int m, double r, double tol) {
    if (k == 0 && m == 0) return 0.0;
    const double d = mode_d(t, k, m);
    const double th = std::tanh(r);
    const double u = th * th;
    const double sech2 = 1.0 - u;
    const double alpha = 0.5 * k;
    const double c = 1.0 + k;
    const double f = conj_series(alpha, d, c, u, tol).value;
    const double p1 = (alpha * alpha + d * d) / c;
    const double fp = p1 * conj_series(alpha + 1.0, d, c + 1.0, u, tol).value;
    double out = pow_int(th, k) * fp * 2.0 * th * sech2;
    if (k >= 1)
        out += k * pow_int(th, k - 1) * sech2 * f;
    return out;
}

double radial_log_deriv(const TubeParams& t, int k, int m, double r, double tol) {
    if (r <= 0.0)
        throw std::domain_error("log derivative needs r > 0");
    if (k == 0 && m == 0) return 0.0;
    const double d = mode_d(t, k, m);
    const double th = std::tanh(r);
    const double u = th * th;
    const double alpha = 0.5 * k;
    const double c = 1.0 + k;
    const SeriesResult s0 = conj_series(alpha, d, c, u, tol);
    const SeriesResult s1 = conj_series(alpha + 1.0, d, c + 1.0, u, tol);
    const double p1 = (alpha * alpha + d * d) / c;
    const double fp_over_f = p1 * std::exp(s1.log_value - s0.log_value);
    const double uprime = 2.0 * th * (1.0 - u);
    double rho = fp_over_f * uprime;
    if (k >= 1)
        rho += k / (std::sinh(r) * std::cosh(r));
    return rho;
}

// ---------------------------------------------------------------------------
// Radial profiles for k = 0 at large d
// ---------------------------------------------------------------------------

namespace {

struct BesselI01 {
    double log_i0;
    double ratio; // I1/I0
};

// Power series for I0, I1; adequate for x <= ~30.
BesselI01 bessel_i01(double x) {
    const double q = 0.25 * x * x;
    double t0 = 1.0, s0 = 1.0;
    double t1 = 1.0, s1 = 1.0;
    for (int n = 1; n < 200; ++n) {
        t0 *= q / (static_cast<double>(n) * n);
        t1 *= q / (static_cast<double>(n) * (n + 1.0));
        s0 += t0;
        s1 += t1;
        if (t0 < 1e-17 * s0 && t1 < 1e-17 * s1)
            break;
    }
    return {std::log(s0), 0.5 * x * s1 / s0};
}

double riccati_rhs(double d, double r, double rho) {
    const double sech = 1.0 / std::cosh(r);
    return 4.0 * d * d * sech * sech - rho * rho - 2.0 * rho / std::tanh(2.0 * r);
}

} // namespace

RadialProfile series_profile_k0(double d, std::span<const double> radii, double tol) {
    RadialProfile out;
    out.log_h.reserve(radii.size());
    out.rho.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0))
            throw std::domain_error("profile radii must be positive");
        const double th = std::tanh(r);
        const double u = th * th;
        const SeriesResult s0 = conj_series(0.0, d, 1.0, u, tol);
        const SeriesResult s1 = conj_series(1.0, d, 2.0, u, tol);
        out.log_h.push_back(s0.log_value);
        out.rho.push_back(d * d * std::exp(s1.log_value - s0.log_value) * 2.0 * th *
                          (1.0 - u));
    }
    return out;
}

RadialProfile riccati_profile_k0(double d, std::span<const double> radii) {
    if (!(d > 0.0))
        throw std::domain_error("riccati profile needs d > 0");
    RadialProfile out;
    out.log_h.reserve(radii.size());
    out.rho.reserve(radii.size());

    const double r_start = std::min(0.01, 5.0 / d);

    double r = r_start;
    BesselI01 b = bessel_i01(2.0 * d * r_start);
    double rho = 2.0 * d * b.ratio;
    double ell = b.log_i0;
    bool marching = false;

    for (double rt : radii) {
        if (rt <= r_start && !marching) {
            // Still on the Bessel branch: closed small-r asymptotics.
            const BesselI01 bb = bessel_i01(2.0 * d * rt);
            out.log_h.push_back(bb.log_i0);
            out.rho.push_back(2.0 * d * bb.ratio);
            continue;
        }
        marching = true;
        if (rt < r)
            throw std::domain_error("profile radii must be ascending");
        while (r < rt) {
            const double scale = std::max(r, 0.5 / d);
            double h = std::min(1e-4, 0.02 * scale);
            if (r + h > rt)
                h = rt - r;
            const double r1 = r + h;
            // Implicit trapezoid step, solved exactly (quadratic in rho1).
            const double f0 = riccati_rhs(d, r, rho);
            const double sech1 = 1.0 / std::cosh(r1);
            const double q1 = 4.0 * d * d * sech1 * sech1;
            const double c1 = 1.0 / std::tanh(2.0 * r1);
            const double B = 1.0 + h * c1;
            const double zeta = rho + 0.5 * h * (f0 + q1);
            const double disc = B * B + 2.0 * h * zeta;
            const double rho1 = 2.0 * zeta / (B + std::sqrt(std::max(disc, 0.0)));
            const double f1 = riccati_rhs(d, r1, rho1);
            // Trapezoid with Euler-Maclaurin endpoint correction for log h.
            ell += 0.5 * h * (rho + rho1) - h * h / 12.0 * (f1 - f0);
            r = r1;
            rho = rho1;
        }
        out.log_h.push_back(ell);
        out.rho.push_back(rho);
    }
    return out;
}

RadialProfile radial_profile_k0(double d, std::span<const double> radii, double tol) {
    if (radii.empty())
        return {};
    const double rmax = radii.back();
    const double cost = d * std::sinh(rmax) + 25.0 * std::cosh(rmax) * std::cosh(rmax);
    if (d == 0.0 || cost <= 1.2e5)
        return series_profile_k0(d, radii, tol);
    return riccati_profile_k0(d, radii);
}

// ---------------------------------------------------------------------------
// Field evaluation
// ---------------------------------------------------------------------------

double eval_f(const HarmonicField& f, const TubePoint& p) {
    f.validate();
    double out = f.c0;
    for (const Mode& mo : f.modes) {
        const double w = mode_omega(f.tube, mo.k, mo.m);
        const double phase = mo.k * p.theta + w * p.z;
        const double h = radial_value(f.tube, mo.k, mo.m, p.r);
        out += h * (mo.a * std::sin(phase) + mo.a_prime * std::cos(phase));
    }
    return out;
}

CoframeComponents eval_df(const HarmonicField& f, const TubePoint& p) {
    f.validate();
    CoframeComponents c;
    for (const Mode& mo : f.modes) {
        const double w = mode_omega(f.tube, mo.k, mo.m);
        const double phase = mo.k * p.theta + w * p.z;
        const double sn = std::sin(phase), cs = std::cos(phase);
        const double ang = mo.a * sn + mo.a_prime * cs;
        const double dang = mo.a * cs - mo.a_prime * sn;
        const double h = radial_value(f.tube, mo.k, mo.m, p.r);
        const double hp = radial_deriv_r(f.tube, mo.k, mo.m, p.r);
        c.f_r += hp * ang;
        c.f_theta += h * mo.k * dang;
        c.f_z += h * w * dang;
    }
    return c;
}

double df_pointwise_norm(const HarmonicField& f, const TubePoint& p) {
    // |df| extends continuously to the axis; evaluate just off r = 0.
    TubePoint q = p;
    if (q.r < 1e-7)
        q.r = 1e-7;
    const CoframeComponents c = eval_df(f, q);
    const double sh = std::sinh(q.r), ch = std::cosh(q.r);
    return std::sqrt(c.f_r * c.f_r + c.f_theta * c.f_theta / (sh * sh) +
                     c.f_z * c.f_z / (ch * ch));
}

// ---------------------------------------------------------------------------
// PDE residuals
// ---------------------------------------------------------------------------

namespace {

struct OperatorTerms {
    double t_radial, t_theta, t_z;
};

OperatorTerms fd_operator_terms(const std::function<double(double, double, double)>& f,
                                const TubePoint& p, double s) {
    const double r = p.r, th = p.theta, z = p.z;
    const double f0 = f(r, th, z);

    const double frp2 = f(r + 2 * s, th, z), frp1 = f(r + s, th, z);
    const double frm1 = f(r - s, th, z), frm2 = f(r - 2 * s, th, z);
    const double f_r = (-frp2 + 8 * frp1 - 8 * frm1 + frm2) / (12 * s);
    const double f_rr = (-frp2 + 16 * frp1 - 30 * f0 + 16 * frm1 - frm2) / (12 * s * s);

    const double f_tt = (-f(r, th + 2 * s, z) + 16 * f(r, th + s, z) - 30 * f0 +
                         16 * f(r, th - s, z) - f(r, th - 2 * s, z)) /
                        (12 * s * s);
    const double f_zz = (-f(r, th, z + 2 * s) + 16 * f(r, th, z + s) - 30 * f0 +
                         16 * f(r, th, z - s) - f(r, th, z - 2 * s)) /
                        (12 * s * s);

    const double sh = std::sinh(r), ch = std::cosh(r);
    OperatorTerms t;
    t.t_radial = f_rr * sh * ch + f_r * std::cosh(2 * r);
    t.t_theta = f_tt * ch / sh;
    t.t_z = f_zz * sh / ch;
    return t;
}

void check_stencil_domain(const TubeParams& t, const TubePoint& p, double step) {
    if (!(step > 0.0))
        throw std::domain_error("stencil step must be positive");
    if (!(p.r - step > 0.0 && p.r + step < t.R))
        throw std::domain_error("point too near the axis or boundary for the stencil");
}

} // namespace

double laplacian_residual(const std::function<double(double, double, double)>& f,
                          const TubeParams& t, const TubePoint& p, double step) {
    check_stencil_domain(t, p, step);
    // Base spacing step/2 keeps the widest sample within r +- step; one
    // Richardson halving cancels the leading step^4 stencil error.
    auto total = [&](double s) {
        const OperatorTerms ot = fd_operator_terms(f, p, s);
        return ot.t_radial + ot.t_theta + ot.t_z;
    };
    const double coarse = total(0.5 * step);
    const double fine = total(0.25 * step);
    return (16.0 * fine - coarse) / 15.0;
}

double laplacian_residual(const HarmonicField& f, const TubePoint& p, double step) {
    f.validate();
    auto func = [&f](double r, double th, double z) {
        return eval_f(f, TubePoint{r, th, z});
    };
    return laplacian_residual(func, f.tube, p, step);
}

double laplacian_scale(const std::function<double(double, double, double)>& f,
                       const TubeParams& t, const TubePoint& p, double step) {
    check_stencil_domain(t, p, step);
    const OperatorTerms ot = fd_operator_terms(f, p, 0.25 * step);
    return std::max({std::abs(ot.t_radial), std::abs(ot.t_theta), std::abs(ot.t_z),
                     1e-300});
}

double ode_residual(const TubeParams& t, int k, int m, double r, double tol) {
    if (!(r > 0.0))
        throw std::domain_error("ode_residual needs r > 0 (coordinate singularity)");
    if (k == 0 && m == 0)
        return 0.0;

    const double d = mode_d(t, k, m);
    const double w = 2.0 * d;
    const double th = std::tanh(r);
    const double u = th * th;
    const double alpha = 0.5 * k;
    const double c = 1.0 + k;

    // Log-space series ratios keep everything finite for huge d.
    const SeriesResult s0 = conj_series(alpha, d, c, u, tol);
    const SeriesResult s1 = conj_series(alpha + 1.0, d, c + 1.0, u, tol);
    const SeriesResult s2 = conj_series(alpha + 2.0, d, c + 2.0, u, tol);
    const double p1 = (alpha * alpha + d * d) / c;
    const double p2 = ((alpha + 1.0) * (alpha + 1.0) + d * d) / (c + 1.0);
    const double fp_over_f = p1 * std::exp(s1.log_value - s0.log_value);
    const double fpp_over_f = p1 * p2 * std::exp(s2.log_value - s0.log_value);

    const double sh = std::sinh(r), ch = std::cosh(r);
    const double uprime = 2.0 * th * (1.0 - u);
    const double usecond = 2.0 * (1.0 - u) * (1.0 - 3.0 * u);

    double rho = fp_over_f * uprime;
    double rho_prime = (fpp_over_f - fp_over_f * fp_over_f) * uprime * uprime +
                       fp_over_f * usecond;
    if (k >= 1) {
        rho += k / (sh * ch);
        rho_prime += -k * std::cosh(2.0 * r) / (sh * sh * ch * ch);
    }

    const double a1 = 0.5 * std::sinh(2.0 * r) * rho * rho;
    const double a2 = 0.5 * std::sinh(2.0 * r) * rho_prime;
    const double a3 = rho * std::cosh(2.0 * r);
    const double a4 = -static_cast<double>(k) * k * ch / sh;
    const double a5 = -w * w * sh / ch;
    const double raw = a1 + a2 + a3 + a4 + a5;
    const double scale = std::max({std::abs(a1), std::abs(a2), std::abs(a3),
                                   std::abs(a4), std::abs(a5), 1e-300});
    return raw / scale;
}

// ---------------------------------------------------------------------------
// Norms and fluxes
// ---------------------------------------------------------------------------

double l2_df_boundary(const HarmonicField& f, double tol) {
    f.validate();
    const double R = f.tube.R;
    const double shch = std::sinh(R) * std::cosh(R);
    double out = 0.0;
    for (const Mode& mo : f.modes) {
        const double h = radial_value(f.tube, mo.k, mo.m, R, tol);
        const double hp = radial_deriv_r(f.tube, mo.k, mo.m, R, tol);
        out += pi * f.tube.lambda * (mo.a * mo.a + mo.a_prime * mo.a_prime) * shch *
               h * hp;
    }
    return out;
}

namespace {

void check_resolution(const HarmonicField& f, const QuadratureSpec& q) {
    int kmax = 0, mmax = 0;
    for (const Mode& mo : f.modes) {
        kmax = std::max(kmax, mo.k);
        mmax = std::max(mmax, mo.m);
    }
    if (q.n_theta < std::max(8, 4 * kmax) || q.n_z < std::max(8, 4 * mmax))
        throw ResolutionError("angular/longitudinal sampling cannot resolve the modes");
    if (q.n_r < 8)
        throw ResolutionError("radial rule too coarse");
}

// Per-mode data cached at one radial node.
struct ModeAtR {
    double h, hp, w;
    int k;
};

std::vector<ModeAtR> modes_at_r(const HarmonicField& f, double r) {
    std::vector<ModeAtR> v;
    v.reserve(f.modes.size());
    for (const Mode& mo : f.modes)
        v.push_back({radial_value(f.tube, mo.k, mo.m, r),
                     radial_deriv_r(f.tube, mo.k, mo.m, r),
                     mode_omega(f.tube, mo.k, mo.m), mo.k});
    return v;
}

double volume_norm_sq(const HarmonicField& f, double kappa, const QuadratureSpec& q) {
    f.validate();
    check_resolution(f, q);
    const TubeParams& t = f.tube;
    const GaussLegendre gr(q.n_r, 0.0, t.R);
    const PeriodicRule gth(q.n_theta, 2.0 * pi);
    const PeriodicRule gz(q.n_z, t.lambda);
    const double dz_comp = kappa / t.lambda;

    double total = 0.0;
    for (int i = 0; i < q.n_r; ++i) {
        const double r = gr.nodes[i];
        const double sh = std::sinh(r), ch = std::cosh(r);
        const auto cache = modes_at_r(f, r);
        double slab = 0.0;
        for (double th : gth.nodes) {
            for (double z : gz.nodes) {
                double f_r = 0.0, f_t = 0.0, f_z = dz_comp;
                for (size_t j = 0; j < cache.size(); ++j) {
                    const Mode& mo = f.modes[j];
                    const ModeAtR& mr = cache[j];
                    const double phase = mo.k * th + mr.w * z;
                    const double sn = std::sin(phase), cs = std::cos(phase);
                    const double ang = mo.a * sn + mo.a_prime * cs;
                    const double dang = mo.a * cs - mo.a_prime * sn;
                    f_r += mr.hp * ang;
                    f_t += mr.h * mo.k * dang;
                    f_z += mr.h * mr.w * dang;
                }
                double val = f_r * f_r + f_z * f_z / (ch * ch);
                if (sh > 0.0)
                    val += f_t * f_t / (sh * sh);
                slab += val;
            }
        }
        total += gr.weights[i] * sh * ch * slab * gth.weight * gz.weight;
    }
    return total;
}

} // namespace

double l2_df_volume(const HarmonicField& f, const QuadratureSpec& q) {
    return volume_norm_sq(f, 0.0, q);
}

double l2_combined_volume(const HarmonicField& f, double kappa, const QuadratureSpec& q) {
    return volume_norm_sq(f, kappa, q);
}

double linf_df(const HarmonicField& f, const QuadratureSpec& grid) {
    f.validate();
    const TubeParams& t = f.tube;
    const PeriodicRule gth(grid.n_theta, 2.0 * pi);
    const PeriodicRule gz(grid.n_z, t.lambda);
    double sup = 0.0;
    for (int i = 0; i <= grid.n_r; ++i) {
        const double r = t.R * i / grid.n_r;
        for (double th : gth.nodes)
            for (double z : gz.nodes)
                sup = std::max(sup, df_pointwise_norm(f, TubePoint{r, th, z}));
    }
    return sup;
}

double flux_disk(const HarmonicField& f, double z0, FluxMethod method,
                 const QuadratureSpec& q) {
    f.validate();
    const TubeParams& t = f.tube;
    if (!(z0 >= 0.0 && z0 < t.lambda))
        throw std::domain_error("flux_disk requires z0 in [0, lambda)");

    if (method == FluxMethod::closed_form) {
        double out = 0.0;
        for (const Mode& mo : f.modes) {
            if (mo.k != 0)
                continue; // k >= 1 modes integrate to zero over theta
            const double w = mode_omega(t, 0, mo.m);
            const double hp = radial_deriv_r(t, 0, mo.m, t.R);
            const double pref = 2.0 * pi * w * t.lambda * t.lambda /
                                (8.0 * pi * pi * mo.m * mo.m) * hp *
                                std::sinh(2.0 * t.R);
            out += pref * (mo.a * std::cos(w * z0) - mo.a_prime * std::sin(w * z0));
        }
        return out;
    }

    const GaussLegendre gr(q.n_r, 0.0, t.R);
    const PeriodicRule gth(q.n_theta, 2.0 * pi);
    double total = 0.0;
    for (int i = 0; i < q.n_r; ++i) {
        const double r = gr.nodes[i];
        double ring = 0.0;
        for (double th : gth.nodes)
            ring += eval_df(f, TubePoint{r, th, z0}).f_z;
        total += gr.weights[i] * std::tanh(r) * ring * gth.weight;
    }
    return total;
}

double flux_invariant_annulus(const HarmonicField& f, double eta, double r0,
                              const QuadratureSpec& q) {
    f.validate();
    const TubeParams& t = f.tube;
    if (!(eta > 0.0 && eta <= 2.0 * pi))
        throw std::domain_error("annulus spread eta must lie in (0, 2*pi]");
    if (!(r0 > 0.0 && r0 <= t.R))
        throw std::domain_error("annulus radius r0 must lie in (0, R]");

    const GaussLegendre gt(q.n_theta, 0.0, eta);
    const GaussLegendre gz(q.n_z, 0.0, t.lambda);
    const double shch = std::sinh(r0) * std::cosh(r0);

    double total = 0.0;
    for (int iz = 0; iz < q.n_z; ++iz) {
        const double z = gz.nodes[iz];
        const double shift = -z * t.theta0 / t.lambda;
        double strip = 0.0;
        for (int it = 0; it < q.n_theta; ++it)
            strip += gt.weights[it] *
                     eval_df(f, TubePoint{r0, shift + gt.nodes[it], z}).f_r;
        total += gz.weights[iz] * strip;
    }
    return total * shch;
}

double inner_dz_df(const HarmonicField& f, const QuadratureSpec& q) {
    f.validate();
    check_resolution(f, q);
    const TubeParams& t = f.tube;
    const GaussLegendre gr(q.n_r, 0.0, t.R);
    const PeriodicRule gth(q.n_theta, 2.0 * pi);
    const PeriodicRule gz(q.n_z, t.lambda);

    double total = 0.0;
    for (int i = 0; i < q.n_r; ++i) {
        const double r = gr.nodes[i];
        const auto cache = modes_at_r(f, r);
        double slab = 0.0;
        for (double th : gth.nodes) {
            for (double z : gz.nodes) {
                double f_z = 0.0;
                for (size_t j = 0; j < cache.size(); ++j) {
                    const Mode& mo = f.modes[j];
                    const ModeAtR& mr = cache[j];
                    const double phase = mo.k * th + mr.w * z;
                    f_z += mr.h * mr.w *
                           (mo.a * std::cos(phase) - mo.a_prime * std::sin(phase));
                }
                slab += f_z;
            }
        }
        total += gr.weights[i] * std::tanh(r) * slab * gth.weight * gz.weight;
    }
    return total;
}

double dz_l2_sq(const TubeParams& t, double kappa) {
    t.validate();
    return kappa * kappa * (2.0 * pi / t.lambda) * std::log(std::cosh(t.R));
}

double dz_l2_sq_quadrature(const TubeParams& t, double kappa, const QuadratureSpec& q) {
    t.validate();
    const GaussLegendre gr(q.n_r, 0.0, t.R);
    double integral = 0.0;
    for (int i = 0; i < q.n_r; ++i)
        integral += gr.weights[i] * std::tanh(gr.nodes[i]);
    const double c = kappa / t.lambda;
    return c * c * 2.0 * pi * t.lambda * integral;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const Mode& m) {
    j = nlohmann::json{{"k", m.k}, {"m", m.m}, {"a", m.a}, {"a_prime", m.a_prime}};
}

void from_json(const nlohmann::json& j, Mode& m) {
    j.at("k").get_to(m.k);
    j.at("m").get_to(m.m);
    j.at("a").get_to(m.a);
    j.at("a_prime").get_to(m.a_prime);
}

void to_json(nlohmann::json& j, const HarmonicField& f) {
    j = nlohmann::json{{"lambda", f.tube.lambda},
                       {"theta0", f.tube.theta0},
                       {"R", f.tube.R},
                       {"c0", f.c0},
                       {"modes", f.modes}};
}

void from_json(const nlohmann::json& j, HarmonicField& f) {
    j.at("lambda").get_to(f.tube.lambda);
    j.at("theta0").get_to(f.tube.theta0);
    j.at("R").get_to(f.tube.R);
    j.at("c0").get_to(f.c0);
    f.modes = j.at("modes").get<std::vector<Mode>>();
    f.validate();
}

} // namespace tubeharm::harmonics
