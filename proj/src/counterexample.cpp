#include "tubeharm/counterexample.hpp"
#include "tubeharm/quadrature.hpp"
#include "tubeharm/tubegeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace tubeharm::counterexample {

using harmonics::HarmonicField;
using harmonics::Mode;
using harmonics::RadialProfile;
using std::numbers::pi;

namespace {

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

GrowthRow growth_row(int m, double V, double lambda) {
    GrowthRow row;
    row.lambda = lambda;
    // Solve lambda * sinh R * cosh R = V/2, i.e. sinh 2R = V/lambda.
    const double R = 0.5 * std::asinh(V / lambda);
    row.R = R;
    row.constraint = lambda * std::sinh(R) * std::cosh(R);
    row.log_cosh_R = std::log(std::cosh(R));

    const double d = m * pi / lambda;
    const double w = 2.0 * d;

    constexpr int ngrid = 512;
    std::vector<double> radii(ngrid);
    for (int i = 0; i < ngrid; ++i)
        radii[i] = R * (i + 1) / ngrid;
    const RadialProfile prof = harmonics::radial_profile_k0(d, radii);

    const double ellR = prof.log_h.back();
    const double rhoR = prof.rho.back();
    const double log_a = -(ellR + std::log(rhoR));

    // sup over r of the two coframe terms of |df|^2, with a = 1/h'(R):
    //   radial term (a h'(r))^2, longitudinal term (a w h(r) sech r)^2,
    // all compared in log space; the r -> 0 limit uses h(0) = 1.
    double log_linf_sq = 2.0 * (std::log(w) + log_a); // r = 0 candidate
    for (int i = 0; i < ngrid; ++i) {
        const double dl = prof.log_h[i] - ellR;
        const double radial = 2.0 * (std::log(prof.rho[i]) + dl - std::log(rhoR));
        const double sech = 1.0 / std::cosh(radii[i]);
        const double longi = 2.0 * (std::log(w) + std::log(sech) + dl + log_a + ellR);
        log_linf_sq = std::max({log_linf_sq, radial, longi});
    }
    row.linf_sq = std::exp(log_linf_sq);

    // Boundary formula with the same normalization:
    // pi*lambda*sinh R*cosh R*h(R)*h'(R)*a^2 = pi*(V/2)/rho(R).
    row.l2_sq = pi * row.constraint / rhoR;
    row.ratio = row.linf_sq / (row.log_cosh_R * row.l2_sq);

    row.lower_ok = log_linf_sq >= 2.0 * (std::log(w) + log_a) - 1e-12;
    const double log_l2 = std::log(row.l2_sq);
    const double log_upper = std::log(4.0 * V) + 2.0 * std::log(d) +
                             2.0 * (ellR + log_a) + std::log(row.log_cosh_R) -
                             std::log(row.constraint / lambda);
    row.upper_ok = log_l2 <= log_upper + 1e-12;
    return row;
}

} // namespace

std::vector<GrowthRow> linf_l2_growth(const GrowthParams& gp) {
    if (gp.m < 1 || !(gp.V > 0.0) || gp.steps < 1 || !(gp.lambda0 > 0.0))
        throw std::domain_error("growth schedule requires m >= 1, V > 0, steps >= 1");
    std::vector<GrowthRow> rows;
    rows.reserve(gp.steps);
    for (int j = 0; j < gp.steps; ++j)
        rows.push_back(growth_row(gp.m, gp.V, gp.lambda0 * std::ldexp(1.0, -j)));
    return rows;
}

std::vector<GrowthRow> linf_l2_growth(int m, double V, int steps) {
    return linf_l2_growth(GrowthParams{m, V, steps, 0.1});
}

namespace {

double log_sum_exp(const std::vector<double>& v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v)
        mx = std::max(mx, x);
    if (!std::isfinite(mx))
        return mx;
    double s = 0.0;
    for (double x : v)
        s += std::exp(x - mx);
    return mx + std::log(s);
}

// Closed-form sides of the disk-flux inequality for non-negative sine
// coefficients a_1..a_n at z0 = 0, carried in log space: h_m(R) grows like
// exp(2 pi m gd(R)/lambda) and overflows doubles already for small m on
// short tubes.  Returns {log lhs, log rhs}.
struct LogSides {
    double log_lhs, log_rhs;
};

LogSides flux_sides(const TubeParams& tube, const std::vector<double>& coeffs,
                    double c) {
    const double R = tube.R;
    const double log_sinh2R = 2.0 * R - std::numbers::ln2 + std::log1p(-std::exp(-4.0 * R));
    const double log_shch = log_sinh2R - std::numbers::ln2;
    const double area = tubegeom::disk_area(R);
    const double lc = std::log(std::cosh(R));

    std::vector<double> flux_terms, l2_terms;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const double a = coeffs[i];
        if (!(a >= 0.0))
            throw std::domain_error("flux search expects non-negative coefficients");
        if (a == 0.0)
            continue;
        const int m = static_cast<int>(i + 1);
        const double d = m * pi / tube.lambda;
        const std::array<double, 1> radii{R};
        const harmonics::RadialProfile prof = harmonics::radial_profile_k0(d, radii);
        const double ell = prof.log_h[0];
        const double log_rho = std::log(prof.rho[0]);
        // Per-mode closed form 2 pi w (lambda^2/(8 pi^2 m^2)) h'(R) sinh 2R
        // = (lambda/(2m)) sinh(2R) h'(R).
        const double log_cm = std::log(tube.lambda / (2.0 * m)) + log_sinh2R;
        flux_terms.push_back(std::log(a) + log_cm + ell + log_rho);
        l2_terms.push_back(2.0 * std::log(a) + std::log(pi * tube.lambda) + log_shch +
                           2.0 * ell + log_rho);
    }
    LogSides out;
    if (flux_terms.empty()) {
        out.log_lhs = -std::numeric_limits<double>::infinity();
        out.log_rhs = -std::numeric_limits<double>::infinity();
        return out;
    }
    out.log_lhs = 2.0 * log_sum_exp(flux_terms);
    out.log_rhs = std::log(c) + 2.0 * std::log(area) + std::log(lc) +
                  log_sum_exp(l2_terms);
    return out;
}

} // namespace

FluxWitness disk_flux_violation(double c, const TubeParams& tube, int max_modes) {
    tube.validate();
    if (!(c > 0.0) || max_modes < 1)
        throw std::domain_error("disk_flux_violation requires c > 0, max_modes >= 1");
    const double th = std::tanh(tube.R);
    if (!(8.0 * pi * th * th > 1.0))
        throw std::domain_error("tube too small: requires 8*pi*tanh^2 R > 1");

    FluxWitness best;
    best.best_ratio = -1.0;
    auto consider = [&](const std::vector<double>& coeffs) {
        const LogSides sides = flux_sides(tube, coeffs, c);
        const double ratio = std::exp(sides.log_lhs - sides.log_rhs);
        if (ratio > best.best_ratio) {
            best.best_ratio = ratio;
            best.coefficients = coeffs;
            best.lhs = std::exp(sides.log_lhs);
            best.rhs = std::exp(sides.log_rhs);
        }
        return ratio > 1.0;
    };

    // Equal positive coefficients with growing mode count.
    for (int n = 1; n <= max_modes; ++n) {
        std::vector<double> coeffs(n, 1.0);
        if (consider(coeffs)) {
            best.found = true;
            return best;
        }
    }
    // Single-mode escalation.
    for (int m = 1; m <= max_modes; ++m) {
        std::vector<double> coeffs(m, 0.0);
        coeffs[m - 1] = 1.0;
        if (consider(coeffs)) {
            best.found = true;
            return best;
        }
    }
    best.found = false;
    return best;
}

WitnessCheck verify_flux_witness(const TubeParams& tube,
                                 const std::vector<double>& coefficients, double c,
                                 const QuadratureSpec& q) {
    HarmonicField f;
    f.tube = tube;
    for (size_t i = 0; i < coefficients.size(); ++i)
        f.modes.push_back(Mode{0, static_cast<int>(i + 1), coefficients[i], 0.0});
    const double flux = harmonics::flux_disk(f, 0.0, harmonics::FluxMethod::quadrature, q);
    const double area = tubegeom::disk_area(tube.R);
    WitnessCheck out;
    out.lhs = flux * flux;
    out.rhs = c * area * area * std::log(std::cosh(tube.R)) *
              harmonics::l2_df_volume(f, q);
    out.slack = out.rhs > 0.0 ? out.lhs / out.rhs - 1.0 : 0.0;
    return out;
}

PoincarePairing poincare_gap(const TubeParams& tube) {
    tube.validate();
    const double lc = std::log(std::cosh(tube.R));
    return {2.0 * pi * tube.lambda * lc, 2.0 * pi * lc};
}

PoincarePairing poincare_gap_quadrature(const TubeParams& tube, const QuadratureSpec& q) {
    tube.validate();
    const quadrature::GaussLegendre gr(q.n_r, 0.0, tube.R);
    double integral = 0.0;
    for (int i = 0; i < q.n_r; ++i)
        integral += gr.weights[i] * std::tanh(gr.nodes[i]);
    return {2.0 * pi * tube.lambda * integral, 2.0 * pi * integral};
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
    std::string out = "lambda,R,linf_sq,l2_sq,log_cosh_R,ratio,constraint\n";
    for (const GrowthRow& r : rows) {
        out += fmt12(r.lambda) + "," + fmt12(r.R) + "," + fmt12(r.linf_sq) + "," +
               fmt12(r.l2_sq) + "," + fmt12(r.log_cosh_R) + "," + fmt12(r.ratio) +
               "," + fmt12(r.constraint) + "\n";
    }
    return out;
}

nlohmann::json growth_json(const std::vector<GrowthRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const GrowthRow& r : rows)
        arr.push_back({{"lambda", r.lambda},
                       {"R", r.R},
                       {"linf_sq", r.linf_sq},
                       {"l2_sq", r.l2_sq},
                       {"log_cosh_R", r.log_cosh_R},
                       {"ratio", r.ratio},
                       {"constraint", r.constraint}});
    return arr;
}

} // namespace tubeharm::counterexample
