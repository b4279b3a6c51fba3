#include "tubeharm/verify.hpp"

#include "tubeharm/counterexample.hpp"
#include "tubeharm/harmonics.hpp"
#include "tubeharm/hypergeom.hpp"
#include "tubeharm/tubegeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace tubeharm::verify {

using harmonics::HarmonicField;
using harmonics::Mode;
using harmonics::QuadratureSpec;
using tubegeom::TubeParams;
using tubegeom::TubePoint;
using std::numbers::pi;

namespace {

std::string describe(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

} // namespace

std::vector<CheckResult> ode_suite(const OdeConfig& cfg) {
    std::vector<CheckResult> out;
    for (double lambda : cfg.lambdas) {
        CheckResult res;
        res.name = describe("ode_residual lambda=%g", lambda);
        res.tol = cfg.tol;
        double worst = 0.0;
        double wl = 0, wth = 0, wr = 0;
        int wk = 0, wm = 0;
        for (double theta0 : cfg.theta0s) {
            const TubeParams t{lambda, theta0, cfg.rmax};
            for (int k = 0; k <= cfg.kmax; ++k) {
                for (int m = 0; m <= cfg.mmax; ++m) {
                    for (int i = 0; i < cfg.npoints; ++i) {
                        const double r =
                            0.1 + (cfg.rmax - 0.1) * i / (cfg.npoints - 1.0);
                        const double rr =
                            std::abs(harmonics::ode_residual(t, k, m, r));
                        if (rr > worst) {
                            worst = rr;
                            wl = lambda; wth = theta0; wr = r; wk = k; wm = m;
                        }
                    }
                }
            }
        }
        res.worst = worst;
        res.pass = worst <= cfg.tol;
        res.detail = describe("worst at lambda=%g theta0=%g k=%d m=%d r=%g", wl, wth,
                              wk, wm, wr);
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<CheckResult> laplacian_suite() {
    std::vector<CheckResult> out;
    std::mt19937 rng(20240817);

    const std::vector<HarmonicField> fields = {
        {TubeParams{0.7, 0.9, 2.0}, 0.3,
         {Mode{0, 1, 0.7, -0.3}, Mode{2, 1, 0.5, 0.2}, Mode{1, 2, -0.4, 0.6}}},
        {TubeParams{1.2, 0.0, 2.5}, -0.1,
         {Mode{3, 1, 0.8, 0.1}, Mode{0, 2, -0.5, 0.4}, Mode{1, 2, 0.3, -0.7}}},
    };

    const double step = 1e-2;
    int fi = 0;
    for (const HarmonicField& f : fields) {
        CheckResult res;
        res.name = describe("laplacian_residual field %d", fi++);
        res.tol = 1e-5;
        std::uniform_real_distribution<double> ur(0.05, f.tube.R - 0.05);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * pi);
        std::uniform_real_distribution<double> uz(0.0, f.tube.lambda);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const TubePoint p{ur(rng), uth(rng), uz(rng)};
            auto func = [&f](double r, double th, double z) {
                return harmonics::eval_f(f, TubePoint{r, th, z});
            };
            const double resid =
                std::abs(harmonics::laplacian_residual(func, f.tube, p, step));
            const double scale = harmonics::laplacian_scale(func, f.tube, p, step);
            worst = std::max(worst, resid / scale);
        }
        res.worst = worst;
        res.pass = worst <= res.tol;
        res.detail = "relative to the largest operator term";
        out.push_back(std::move(res));
    }

    // Negative control: a non-harmonic field (radial factor cosh r) must
    // leave a residual far above the stencil-error floor.
    {
        CheckResult res;
        res.name = "laplacian_residual negative control";
        res.tol = 1e-2; // must EXCEED this
        const TubeParams t{1.0, 0.0, 2.0};
        const double w = 2.0 * pi; // k=1, m=1 frequency on this tube
        auto bad = [w](double r, double th, double z) {
            return std::cosh(r) * std::cos(th + w * z);
        };
        std::uniform_real_distribution<double> ur(0.05, t.R - 0.05);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * pi);
        std::uniform_real_distribution<double> uz(0.0, t.lambda);
        double best = 0.0;
        for (int i = 0; i < 100; ++i) {
            const TubePoint p{ur(rng), uth(rng), uz(rng)};
            const double resid =
                std::abs(harmonics::laplacian_residual(bad, t, p, 1e-2));
            const double scale = harmonics::laplacian_scale(bad, t, p, 1e-2);
            best = std::max(best, resid / scale);
        }
        res.worst = best;
        res.pass = best > res.tol;
        res.detail = "corrupted field residual must stay bounded away from zero";
        out.push_back(std::move(res));
    }
    return out;
}

namespace {

HarmonicField random_field(std::mt19937& rng) {
    // Ranges keep the largest mode frequency d small enough that h*h' at the
    // boundary stays within double range.
    std::uniform_real_distribution<double> ulam(0.6, 1.2);
    std::uniform_real_distribution<double> uth0(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> uR(1.0, 2.5);
    std::uniform_int_distribution<int> uk(0, 4);
    std::uniform_int_distribution<int> um(1, 4); // m >= 1, see flux note below
    std::uniform_real_distribution<double> ua(-1.0, 1.0);

    HarmonicField f;
    f.tube = TubeParams{ulam(rng), uth0(rng), uR(rng)};
    f.c0 = ua(rng);
    for (int i = 0; i < 5; ++i)
        f.modes.push_back(Mode{uk(rng), um(rng), ua(rng), ua(rng)});
    return f;
}

} // namespace

std::vector<CheckResult> flux_suite() {
    // Battery modes all carry m >= 1: a mode with k >= 1, m = 0 has a
    // z-independent pull-back on the twisted annulus and genuinely nonzero
    // flux for generic spread eta, so the vanishing identity only covers
    // modes with nonzero longitudinal frequency (eta = 2 pi covers all).
    std::vector<CheckResult> out;
    std::mt19937 rng(9157231);
    const QuadratureSpec q{64, 64, 64, 1e-8};

    CheckResult partial{"flux_invariant_annulus eta=pi/3", false, 0.0, 1e-9, ""};
    CheckResult full{"flux_invariant_annulus eta=2pi (torus)", false, 0.0, 1e-9, ""};
    CheckResult pairing{"inner_dz_df pairing", false, 0.0, 1e-9, ""};
    CheckResult disk{"flux_disk closed form vs quadrature", false, 0.0, 1e-8, ""};

    for (int i = 0; i < 20; ++i) {
        const HarmonicField f = random_field(rng);
        const double l2 = harmonics::l2_df_boundary(f);
        const double df_norm = std::sqrt(l2);

        {
            const double r0 = 0.5 * f.tube.R;
            const double eta = pi / 3.0;
            const double area =
                eta * f.tube.lambda * std::sinh(r0) * std::cosh(r0);
            const double v = harmonics::flux_invariant_annulus(f, eta, r0, q);
            partial.worst =
                std::max(partial.worst, std::abs(v) / (df_norm * std::sqrt(area)));
        }
        {
            const double r0 = 0.7 * f.tube.R;
            const double eta = 2.0 * pi;
            const double area =
                eta * f.tube.lambda * std::sinh(r0) * std::cosh(r0);
            const double v = harmonics::flux_invariant_annulus(f, eta, r0, q);
            full.worst =
                std::max(full.worst, std::abs(v) / (df_norm * std::sqrt(area)));
        }
        {
            const double dz_norm = std::sqrt(harmonics::dz_l2_sq(f.tube, 1.0));
            const double v = harmonics::inner_dz_df(f, q);
            pairing.worst = std::max(pairing.worst, std::abs(v) / (df_norm * dz_norm));
        }
        {
            const double z0 = 0.3 * f.tube.lambda;
            const double a =
                harmonics::flux_disk(f, z0, harmonics::FluxMethod::closed_form);
            const double b =
                harmonics::flux_disk(f, z0, harmonics::FluxMethod::quadrature, q);
            const double scale = std::max(std::abs(a), df_norm);
            disk.worst = std::max(disk.worst, std::abs(a - b) / scale);
        }
    }

    for (CheckResult* r : {&partial, &full, &pairing, &disk}) {
        r->pass = r->worst <= r->tol;
        r->detail = "worst over 20 random 5-mode fields, relative to field scale";
        out.push_back(*r);
    }
    return out;
}

std::vector<CheckResult> orthogonality_suite() {
    std::vector<CheckResult> out;
    const QuadratureSpec q{64, 64, 64, 1e-6};

    const HarmonicField single{TubeParams{1.0, 0.0, 3.0}, 0.0, {Mode{0, 1, 0.0, 1.0}}};
    const HarmonicField multi{TubeParams{0.8, 1.3, 2.0}, 0.2,
                              {Mode{0, 1, 0.4, -0.2}, Mode{2, 1, -0.6, 0.3},
                               Mode{1, 2, 0.5, 0.5}, Mode{3, 3, -0.1, 0.7}}};

    {
        CheckResult res{"l2 boundary vs volume (single mode)", false, 0.0, 1e-6, ""};
        const double a = harmonics::l2_df_boundary(single);
        const double b = harmonics::l2_df_volume(single, q);
        res.worst = std::abs(a - b) / a;
        res.pass = res.worst <= res.tol;
        res.detail = describe("boundary=%.12g volume=%.12g", a, b);
        out.push_back(std::move(res));
    }
    {
        CheckResult res{"l2 boundary vs volume (multi mode)", false, 0.0, 1e-6, ""};
        const double a = harmonics::l2_df_boundary(multi);
        const double b = harmonics::l2_df_volume(multi, q);
        res.worst = std::abs(a - b) / a;
        res.pass = res.worst <= res.tol;
        res.detail = describe("boundary=%.12g volume=%.12g", a, b);
        out.push_back(std::move(res));
    }
    {
        // Additivity of the quadratic functional across distinct modes.
        CheckResult res{"l2 mode additivity", false, 0.0, 1e-6, ""};
        HarmonicField f1 = multi, f2 = multi, sum = multi;
        f1.modes = {multi.modes[0], multi.modes[1]};
        f2.modes = {multi.modes[2], multi.modes[3]};
        const double lhs = harmonics::l2_df_volume(sum, q);
        const double rhs =
            harmonics::l2_df_volume(f1, q) + harmonics::l2_df_volume(f2, q);
        res.worst = std::abs(lhs - rhs) / lhs;
        res.pass = res.worst <= res.tol;
        out.push_back(std::move(res));
    }
    {
        // || (kappa/lambda) dz + df ||^2 = ||dz part||^2 + ||df||^2.
        CheckResult res{"orthogonal decomposition", false, 0.0, 1e-8, ""};
        const double kappa = 1.7;
        const double combined = harmonics::l2_combined_volume(multi, kappa, q);
        const double parts =
            harmonics::dz_l2_sq_quadrature(multi.tube, kappa, q) +
            harmonics::l2_df_volume(multi, q);
        res.worst = std::abs(combined - parts) / combined;
        res.pass = res.worst <= res.tol;
        out.push_back(std::move(res));
    }
    {
        CheckResult res{"dz norm closed vs quadrature", false, 0.0, 1e-8, ""};
        const TubeParams t{0.5, 2.1, 2.2};
        const double a = harmonics::dz_l2_sq(t, 1.3);
        const double b = harmonics::dz_l2_sq_quadrature(t, 1.3, q);
        res.worst = std::abs(a - b) / a;
        res.pass = res.worst <= res.tol;
        out.push_back(std::move(res));
    }
    {
        CheckResult res{"duality gap closed vs quadrature", false, 0.0, 1e-8, ""};
        const TubeParams t{0.5, 0.0, 1.0};
        const auto closed = counterexample::poincare_gap(t);
        const auto quad = counterexample::poincare_gap_quadrature(t, q);
        res.worst = std::max(
            std::abs(closed.tube_pairing - quad.tube_pairing) / closed.tube_pairing,
            std::abs(closed.disk_pairing - quad.disk_pairing) / closed.disk_pairing);
        const double gap_ratio = closed.tube_pairing / closed.disk_pairing;
        res.pass = res.worst <= res.tol && gap_ratio == t.lambda;
        res.detail = describe("pairing ratio=%.12g (lambda=%.12g)", gap_ratio, t.lambda);
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<CheckResult> inequality_suite() {
    std::vector<CheckResult> out;

    {
        // Strictness of F2(d,u)*u < F1(d,u)*log(1/(1-u)) on the grid.
        CheckResult res{"hypergeometric inequality grid", false, 0.0, 1.0, ""};
        double worst = 0.0;
        double wd = 0, wu = 0;
        for (double d : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            for (int i = 1; i <= 50; ++i) {
                const double u = 0.999 * i / 51.0;
                const double lhs = hypergeom::f21_deriv_factor(d, u).value * u;
                const double rhs = hypergeom::f21_conj({0, d}, u).value *
                                   std::log(1.0 / (1.0 - u));
                const double r = lhs / rhs;
                if (r > worst) {
                    worst = r;
                    wd = d;
                    wu = u;
                }
            }
        }
        res.worst = worst;
        res.pass = worst < 1.0;
        res.detail = describe("max side ratio %.12g at d=%g u=%g", worst, wd, wu);
        out.push_back(std::move(res));
    }
    {
        // Sharpness: the side ratio exceeds 0.9 at u = 1-1e-8 and increases
        // toward 1 across the last decades of u.
        CheckResult res{"hypergeometric inequality sharpness", false, 0.0, 0.9, ""};
        bool ok = true;
        double final_ratio = 0.0;
        for (double d : {0.5, 1.0}) {
            double prev = 0.0;
            for (int x = 5; x <= 8; ++x) {
                const double u = 1.0 - std::pow(10.0, -x);
                const auto pair = hypergeom::near_one_pair(d, u);
                const double ratio =
                    pair.f2 * u / (pair.f1 * std::log(1.0 / (1.0 - u)));
                ok = ok && ratio < 1.0 && ratio > prev;
                prev = ratio;
            }
            ok = ok && prev >= 0.9;
            final_ratio = std::min(prev, final_ratio == 0.0 ? prev : final_ratio);
        }
        res.worst = final_ratio;
        res.pass = ok;
        res.detail = "side ratio at u=1-1e-8, monotone over u=1-10^{-x}, x=5..8";
        out.push_back(std::move(res));
    }
    {
        // Endpoint values against the analytic k=0 closed form.
        CheckResult res{"endpoint values sinh(pi d)/(pi d)", false, 0.0, 1e-6, ""};
        double worst = 0.0;
        for (double d : {0.5, 1.0, 2.0, 5.0}) {
            const double got = hypergeom::endpoint_value({0, d}).value;
            const double want = std::sinh(pi * d) / (pi * d);
            worst = std::max(worst, std::abs(got - want) / want);
        }
        res.worst = worst;
        res.pass = worst <= res.tol;
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<CheckResult> all_suites() {
    std::vector<CheckResult> out;
    for (auto&& block :
         {ode_suite(), laplacian_suite(), flux_suite(), orthogonality_suite(),
          inequality_suite()})
        out.insert(out.end(), block.begin(), block.end());
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

} // namespace tubeharm::verify
