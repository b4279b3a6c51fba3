#include <doctest.h>

#include "tubeharm/harmonics.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace tubeharm;
using namespace tubeharm::harmonics;

namespace {
const TubeParams tube_basic{1.0, 0.0, 3.0};
}

TEST_CASE("mode frequency parameters") {
    CHECK(mode_d(tube_basic, 0, 1) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(mode_omega(tube_basic, 0, 1) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    const TubeParams t{2.0, 0.7, 1.0};
    CHECK(mode_d(t, 3, 2) == doctest::Approx(2.0 * M_PI / 2.0 + 3.0 * 0.7 / 4.0).epsilon(1e-15));
    CHECK(mode_omega(t, 3, 2) == doctest::Approx(2.0 * mode_d(t, 3, 2)).epsilon(1e-15));
    // The (0,0) frequency vanishes regardless of twist.
    CHECK(mode_d(t, 0, 0) == 0.0);
}

TEST_CASE("radial values") {
    // h_00 == 1, h' == 0.
    CHECK(radial_value(tube_basic, 0, 0, 1.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(radial_deriv_r(tube_basic, 0, 0, 1.3) == doctest::Approx(0.0).epsilon(1e-15));
    // k = 0, m = 1, lambda = 1 at r = 2: d = pi, u = tanh^2 2.
    CHECK(radial_value(tube_basic, 0, 1, 2.0, 1e-13)
          == doctest::Approx(355.674786335814296).epsilon(1e-10));
    // h(0) = 0 for k >= 1, h(0) = 1 for k = 0.
    CHECK(radial_value(tube_basic, 2, 1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(radial_value(tube_basic, 0, 2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // log value consistency.
    CHECK(radial_log_value(tube_basic, 0, 1, 2.0, 1e-13)
          == doctest::Approx(std::log(355.674786335814296)).epsilon(1e-12));
    // Monotone increasing in r.
    double prev = 0.0;
    for (double r = 0.2; r < 3.0; r += 0.2) {
        const double h = radial_value(tube_basic, 2, 1, r);
        CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("radial derivative matches finite differences") {
    for (int k : {0, 1, 2}) {
        for (int m : {1, 2}) {
            for (double r = 0.3; r < 2.95; r += 0.4) {
                const double h = 1e-6;
                const double fd = (radial_value(tube_basic, k, m, r + h, 1e-14)
                                   - radial_value(tube_basic, k, m, r - h, 1e-14))
                                  / (2.0 * h);
                const double an = radial_deriv_r(tube_basic, k, m, r, 1e-14);
                CHECK(fd == doctest::Approx(an).epsilon(1e-7));
                CHECK(radial_log_deriv(tube_basic, k, m, r, 1e-14)
                      == doctest::Approx(an / radial_value(tube_basic, k, m, r, 1e-14))
                             .epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("radial profile: series and Riccati paths cross-validate") {
    const std::vector<double> radii{0.5, 1.0, 2.0};
    // d = 1000 forces extreme growth; frozen high-precision references.
    const double logh_ref[] = {956.368897326138904, 1726.73913048355211, 2598.15779526599904};
    const double rho_ref[] = {1772.55574281481555, 1295.45224898271517, 531.086486565356524};
    const auto ser = series_profile_k0(1000.0, radii, 1e-12);
    const auto ric = riccati_profile_k0(1000.0, radii);
    const auto dis = radial_profile_k0(1000.0, radii);
    for (int i = 0; i < 3; ++i) {
        CHECK(ser.log_h[i] == doctest::Approx(logh_ref[i]).epsilon(1e-12));
        CHECK(ser.rho[i] == doctest::Approx(rho_ref[i]).epsilon(1e-10));
        CHECK(ric.log_h[i] == doctest::Approx(logh_ref[i]).epsilon(2e-7));
        CHECK(ric.rho[i] == doctest::Approx(rho_ref[i]).epsilon(1e-8));
        CHECK(dis.log_h[i] == doctest::Approx(logh_ref[i]).epsilon(1e-10));
    }
    // Small radii resolve on the Bessel branch: at 2 d r = 6,
    // log h ~ log I0(6), rho ~ 2 d I1(6)/I0(6).
    const std::vector<double> small{0.003};
    const auto b = riccati_profile_k0(1000.0, small);
    CHECK(b.log_h[0] == doctest::Approx(4.20818512507597723).epsilon(1e-10));
    CHECK(b.rho[0] / 2000.0 == doctest::Approx(0.912359304352915256).epsilon(1e-10));
    // Moderate d uses the series; both paths agree there too.
    const std::vector<double> rr{0.4, 1.1, 2.3, 4.0};
    const auto s2 = series_profile_k0(40.0, rr, 1e-12);
    const auto r2 = riccati_profile_k0(40.0, rr);
    for (size_t i = 0; i < rr.size(); ++i) {
        CHECK(r2.log_h[i] == doctest::Approx(s2.log_h[i]).epsilon(1e-6));
        CHECK(r2.rho[i] == doctest::Approx(s2.rho[i]).epsilon(1e-7));
    }
}

TEST_CASE("field evaluation and periodicity") {
    const HarmonicField f{{0.8, 1.3, 2.0},
                          0.2,
                          {{0, 1, 0.4, -0.2}, {2, 1, -0.6, 0.3}, {1, 2, 0.5, 0.5}}};
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ur(0.05, 1.95), ut(0.0, 2.0 * M_PI),
        uz(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double r = ur(rng), th = ut(rng), z = uz(rng);
        const auto p0 = tubegeom::canonicalize(f.tube, r, th, z);
        const auto p1 = tubegeom::canonicalize(f.tube, r, th + 2.0 * M_PI, z);
        const auto p2 = tubegeom::canonicalize(f.tube, r, th + f.tube.theta0,
                                               z - f.tube.lambda);
        const double v0 = eval_f(f, p0);
        const double scale = std::max(1.0, std::abs(v0));
        CHECK(std::abs(eval_f(f, p1) - v0) / scale < 1e-12);
        CHECK(std::abs(eval_f(f, p2) - v0) / scale < 1e-12);
        const auto d0 = eval_df(f, p0);
        const auto d2 = eval_df(f, p2);
        CHECK(std::abs(d2.f_r - d0.f_r) / std::max(1.0, std::abs(d0.f_r)) < 1e-11);
        CHECK(std::abs(d2.f_theta - d0.f_theta) / std::max(1.0, std::abs(d0.f_theta)) < 1e-11);
        CHECK(std::abs(d2.f_z - d0.f_z) / std::max(1.0, std::abs(d0.f_z)) < 1e-11);
    }
    // Constant fields have zero differential.
    const HarmonicField c{{1.0, 0.0, 1.0}, 3.5, {}};
    const auto dc = eval_df(c, {0.5, 1.0, 0.3});
    CHECK(dc.f_r == 0.0);
    CHECK(dc.f_theta == 0.0);
    CHECK(dc.f_z == 0.0);
    CHECK(df_pointwise_norm(c, {0.5, 1.0, 0.3}) == 0.0);
    // k = 0 modes have no angular component.
    const HarmonicField a{{1.0, 0.0, 2.0}, 0.0, {{0, 1, 1.0, 0.0}}};
    CHECK(eval_df(a, {1.0, 0.7, 0.4}).f_theta == 0.0);
}

TEST_CASE("pointwise norm is continuous through the core") {
    const HarmonicField f{{1.0, 0.5, 2.0}, 0.0, {{1, 1, 0.7, 0.2}, {2, 1, 0.1, -0.3}}};
    const double at_axis = df_pointwise_norm(f, {0.0, 0.9, 0.4});
    const double near_axis = df_pointwise_norm(f, {1e-5, 0.9, 0.4});
    CHECK(std::isfinite(at_axis));
    CHECK(near_axis == doctest::Approx(at_axis).epsilon(1e-4));
}

TEST_CASE("finite-difference Laplacian residual") {
    const HarmonicField f{{0.7, 0.9, 2.0},
                          0.3,
                          {{0, 1, 0.7, -0.3}, {2, 1, 0.5, 0.2}, {1, 2, -0.4, 0.6}}};
    auto f_fn = [&f](double r, double th, double z) {
        return eval_f(f, tubegeom::canonicalize(f.tube, r, th, z));
    };
    for (double r : {0.3, 1.0, 1.7}) {
        const TubePoint p{r, 1.1, 0.25};
        const double res = laplacian_residual(f, p, 1e-2);
        const double scale = laplacian_scale(f_fn, f.tube, p, 1e-2);
        CHECK(std::abs(res) / scale < 1e-6);
    }
    // Negative control: a smooth non-harmonic function must be flagged.
    const TubeParams t{1.0, 0.0, 2.0};
    auto bad = [](double r, double th, double z) {
        return std::cosh(r) * std::cos(th + 2.0 * M_PI * z);
    };
    CHECK(std::abs(laplacian_residual(bad, t, {1.0, 0.7, 0.3}, 1e-2))
              / laplacian_scale(bad, t, {1.0, 0.7, 0.3}, 1e-2)
          > 1e-2);
    // Stencil domain checks.
    CHECK_THROWS_AS((void)laplacian_residual(f, {0.001, 0.0, 0.0}, 1e-2), std::domain_error);
    CHECK_THROWS_AS((void)laplacian_residual(f, {1.999, 0.0, 0.0}, 1e-2), std::domain_error);
}

TEST_CASE("radial ODE residual") {
    const TubeParams t{0.5, 1.3, 5.0};
    for (int i = 0; i < 50; ++i) {
        const double r = 0.1 + (5.0 - 0.2) * i / 49.0;
        CHECK(std::abs(ode_residual(t, 2, 3, r)) < 1e-7);
        CHECK(std::abs(ode_residual(t, 0, 4, r)) < 1e-7);
    }
    CHECK_THROWS_AS((void)ode_residual(t, 2, 3, 0.0), std::domain_error);
}

TEST_CASE("L2 norms: boundary closed form and volume quadrature") {
    const HarmonicField single{{1.0, 0.0, 3.0}, 0.0, {{0, 1, 0.0, 1.0}}};
    CHECK(l2_df_boundary(single) == doctest::Approx(67711601.7109205314).epsilon(1e-9));
    CHECK(l2_df_volume(single, {}) == doctest::Approx(67711601.7109205314).epsilon(1e-6));
    // Additivity over modes.
    const TubeParams t{0.8, 1.3, 2.0};
    const HarmonicField f1{t, 0.0, {{0, 1, 0.4, -0.2}}};
    const HarmonicField f2{t, 0.0, {{2, 1, -0.6, 0.3}}};
    const HarmonicField both{t, 0.7, {{0, 1, 0.4, -0.2}, {2, 1, -0.6, 0.3}}};
    CHECK(l2_df_boundary(both)
          == doctest::Approx(l2_df_boundary(f1) + l2_df_boundary(f2)).epsilon(1e-12));
    // The constant offset contributes nothing.
    const HarmonicField f1c{t, 9.0, {{0, 1, 0.4, -0.2}}};
    CHECK(l2_df_volume(f1c, {}) == doctest::Approx(l2_df_volume(f1, {})).epsilon(1e-13));
}

TEST_CASE("resolution guard on quadrature") {
    const HarmonicField f{{1.0, 0.0, 2.0}, 0.0, {{5, 1, 1.0, 0.0}}};
    QuadratureSpec q;
    q.n_theta = 12; // below 4*k = 20
    CHECK_THROWS_AS((void)l2_df_volume(f, q), ResolutionError);
    QuadratureSpec qz;
    qz.n_z = 8; // below 4*m = 24 for m = 6
    const HarmonicField g{{1.0, 0.0, 2.0}, 0.0, {{0, 6, 1.0, 0.0}}};
    CHECK_THROWS_AS((void)l2_df_volume(g, qz), ResolutionError);
}

TEST_CASE("sup norm of a normalized short-core mode") {
    // With amplitude a = 1/h'(R) the radial component at r = R has size 1, and
    // the longitudinal component w a h sech r peaks slightly above it; the grid
    // sup must dominate both.  Frozen reference for the squared sup: 1.11465379857.
    const TubeParams t{0.1, 0.0, 2.64917118280529438};
    const double hp = radial_deriv_r(t, 0, 1, t.R);
    const HarmonicField f{t, 0.0, {{0, 1, 1.0 / hp, 0.0}}};
    const double sup = linf_df(f, {128, 8, 128});
    CHECK(sup >= 0.999);
    CHECK(sup * sup == doctest::Approx(1.11465379857).epsilon(2e-2));
}

TEST_CASE("disk flux") {
    // Only k = 0 modes contribute; closed form against quadrature.
    const HarmonicField f{{1.0, 0.7, 2.0}, 0.4, {{0, 1, 0.8, -0.5}, {2, 1, 0.3, 0.1}}};
    for (double z0 : {0.0, 0.3, 0.99}) {
        const double cf = flux_disk(f, z0, FluxMethod::closed_form);
        const double qd = flux_disk(f, z0, FluxMethod::quadrature, {});
        CHECK(qd == doctest::Approx(cf).epsilon(1e-10));
    }
    // Frozen radial identity at m = 1, lambda = 1, R = 2, a = 1, a' = 0, z0 = 0:
    // the flux is 2 pi w int_0^R h tanh r dr with the integral equal to
    // h'(R) sinh(2R)/(8 pi^2) = 159.009947928855169, so the total carries 4 pi^2.
    const double four_pi_sq = 4.0 * M_PI * M_PI;
    const HarmonicField u{{1.0, 0.0, 2.0}, 0.0, {{0, 1, 1.0, 0.0}}};
    CHECK(flux_disk(u, 0.0, FluxMethod::closed_form)
          == doctest::Approx(four_pi_sq * 159.009947928855169).epsilon(1e-10));
    CHECK(flux_disk(u, 0.0, FluxMethod::quadrature, {})
          == doctest::Approx(four_pi_sq * 159.009947928855169).epsilon(1e-8));
    // Pure k != 0 fields have zero disk flux.
    const HarmonicField g{{1.0, 0.0, 2.0}, 0.9, {{2, 1, 0.7, 0.7}, {1, 3, -0.2, 0.5}}};
    CHECK(std::abs(flux_disk(g, 0.2, FluxMethod::closed_form)) < 1e-14);
    // The flux averages to zero over a period in z0.
    double acc = 0.0;
    const int n = 64;
    for (int i = 0; i < n; ++i)
        acc += flux_disk(f, f.tube.lambda * i / n, FluxMethod::closed_form);
    CHECK(std::abs(acc / n) < 1e-9 * std::abs(flux_disk(f, 0.0, FluxMethod::closed_form)));
    CHECK_THROWS_AS((void)flux_disk(f, -0.1, FluxMethod::closed_form), std::domain_error);
    CHECK_THROWS_AS((void)flux_disk(f, 1.0, FluxMethod::closed_form), std::domain_error);
}

TEST_CASE("invariant annulus flux vanishes") {
    const HarmonicField f{{0.9, 2.1, 1.8}, -0.3,
                          {{0, 1, 0.5, 0.2}, {3, 2, -0.4, 0.6}, {1, 1, 0.3, 0.3}}};
    const double scale = std::sqrt(l2_df_boundary(f));
    for (double eta : {0.7, M_PI / 3.0, 2.0 * M_PI}) {
        for (double r0 : {0.6, 1.2, 1.8}) {
            CHECK(std::abs(flux_invariant_annulus(f, eta, r0, {})) < 1e-10 * scale);
        }
    }
    CHECK_THROWS_AS((void)flux_invariant_annulus(f, 0.0, 1.0, {}), std::domain_error);
    CHECK_THROWS_AS((void)flux_invariant_annulus(f, 7.0, 1.0, {}), std::domain_error);
}

TEST_CASE("dz pairings and combined norm") {
    const TubeParams t{1.0, 0.0, 1.0};
    CHECK(dz_l2_sq(t, 1.0) == doctest::Approx(2.0 * M_PI * std::log(std::cosh(1.0)))
                                  .epsilon(1e-13));
    CHECK(dz_l2_sq_quadrature(t, 1.7, {}) == doctest::Approx(dz_l2_sq(t, 1.7)).epsilon(1e-10));
    // <dz, df> vanishes for harmonic fields (all modes oscillate in z or theta).
    const HarmonicField f{{0.5, 0.0, 1.0}, 0.2, {{0, 1, 0.9, 0.1}, {2, 2, 0.3, -0.6}}};
    const double l2 = l2_df_volume(f, {});
    CHECK(std::abs(inner_dz_df(f, {})) < 1e-9 * std::sqrt(l2 * dz_l2_sq(f.tube, 1.0)));
    // Pythagoras: ||k/lambda dz + df||^2 = ||k/lambda dz||^2 + ||df||^2.
    const double kappa = 1.7;
    CHECK(l2_combined_volume(f, kappa, {})
          == doctest::Approx(dz_l2_sq(f.tube, kappa) + l2).epsilon(1e-8));
}

TEST_CASE("json round trip") {
    const HarmonicField f{{0.8, 1.3, 2.0}, 0.25,
                          {{0, 1, 0.4, -0.2}, {2, 1, -0.6, 0.3}}};
    nlohmann::json j = f;
    CHECK(j["lambda"] == 0.8);
    CHECK(j["theta0"] == 1.3);
    CHECK(j["R"] == 2.0);
    CHECK(j["c0"] == 0.25);
    CHECK(j["modes"].size() == 2);
    CHECK(j["modes"][0]["k"] == 0);
    CHECK(j["modes"][1]["a_prime"] == 0.3);
    const HarmonicField g = j.get<HarmonicField>();
    CHECK(g.tube.lambda == f.tube.lambda);
    CHECK(g.tube.theta0 == f.tube.theta0);
    CHECK(g.c0 == f.c0);
    REQUIRE(g.modes.size() == 2);
    CHECK(g.modes[1].a == f.modes[1].a);
    // Round trip again gives identical serialization.
    nlohmann::json j2 = g;
    CHECK(j == j2);
}

TEST_CASE("field validation") {
    HarmonicField f{{1.0, 0.0, 1.0}, 0.0, {{-1, 1, 1.0, 0.0}}};
    CHECK_THROWS_AS(f.validate(), std::domain_error);
    HarmonicField g{{1.0, 0.0, 1.0}, 0.0, {{0, -2, 1.0, 0.0}}};
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    HarmonicField ok{{1.0, 0.0, 1.0}, 0.0, {{0, 1, 1.0, 0.0}}};
    CHECK_NOTHROW(ok.validate());
}
