#pragma once

#include "tubeharm/harmonics.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace tubeharm::counterexample {

using harmonics::QuadratureSpec;
using tubegeom::TubeParams;

// One row of the L-infinity / L^2 growth table.  Rows are computed with the
// per-row amplitude normalization a = 1/h'(R) (the ratio is scale invariant;
// unnormalized h(R), h'(R) overflow doubles long before the schedule ends),
// so linf_sq and l2_sq are the normalized squared norms.
struct GrowthRow {
    double lambda = 0.0;
    double R = 0.0;
    double linf_sq = 0.0;
    double l2_sq = 0.0;
    double log_cosh_R = 0.0;
    double ratio = 0.0;      // linf_sq / (log_cosh_R * l2_sq)
    double constraint = 0.0; // lambda * sinh R * cosh R (= V/2 by construction)
    bool lower_ok = false;   // linf_sq >= (2*pi*m/lambda)^2 * a^2
    bool upper_ok = false;   // l2_sq <= 4V (pi m/lambda)^2 h(R)^2 a^2 log cosh R/(sinh R cosh R)
};

struct GrowthParams {
    int m = 1;
    double V = 10.0;
    int steps = 20;
    double lambda0 = 0.1;
};

std::vector<GrowthRow> linf_l2_growth(const GrowthParams& gp);
std::vector<GrowthRow> linf_l2_growth(int m, double V, int steps);

struct FluxWitness {
    std::vector<double> coefficients; // sine amplitudes a_1..a_n
    double lhs = 0.0;                 // (disk flux at z = 0)^2
    double rhs = 0.0;                 // c * area(D)^2 * log cosh R * ||df||^2
    bool found = false;
    double best_ratio = 0.0;          // best lhs/rhs over the whole search
};

// Deterministic search (equal coefficients with growing mode count, then
// single-mode escalation) for coefficients violating the uniform disk-flux
// bound.  Returns a failure report with the best ratio achieved when no
// witness exists on the given tube.
FluxWitness disk_flux_violation(double c, const TubeParams& tube, int max_modes);

struct WitnessCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // lhs/rhs - 1
};

// Independent re-verification of a coefficient vector by full quadrature of
// both sides (no closed forms).
WitnessCheck verify_flux_witness(const TubeParams& tube,
                                 const std::vector<double>& coefficients, double c,
                                 const QuadratureSpec& q);

struct PoincarePairing {
    double tube_pairing = 0.0; // integral over the tube of *dz wedge dz = 2 pi lambda log cosh R
    double disk_pairing = 0.0; // integral over a geodesic disk of *dz = 2 pi log cosh R
};

PoincarePairing poincare_gap(const TubeParams& tube);
PoincarePairing poincare_gap_quadrature(const TubeParams& tube, const QuadratureSpec& q);

std::string growth_csv(const std::vector<GrowthRow>& rows);
nlohmann::json growth_json(const std::vector<GrowthRow>& rows);

} // namespace tubeharm::counterexample
