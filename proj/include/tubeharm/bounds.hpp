#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tubeharm::bounds {

struct ThurstonInput {
    double lambda = 1.0; // shortest core geodesic length, > 0
    int kappa = 0;       // algebraic intersection number
};

struct ThurstonBound {
    double bound = 0.0;      // |kappa| * (2*pi*eps/sqrt(7.256*lambda) - 2*pi)
    bool vacuous = false;    // bound <= 0: reported, never clamped silently
    double simplified = 0.0; // 0.2*pi/sqrt(lambda) * |kappa|
    bool simplified_valid = false; // lambda <= 58e-6
};

ThurstonBound thurston_lower_bound(const ThurstonInput& in, bool exact_constants = true,
                                   double margulis_eps = 0.29);

// (pi/sqrt(vol) * thurston, 10*pi/sqrt(inj) * thurston)
std::pair<double, double> bd_sandwich(double vol, double inj, double thurston);

// c_eps*pi + 2*sqrt(c_eps^2*pi^2 + 16*log cosh R); ~ 8*sqrt(log cosh R) as R grows.
double main_ratio_bound(double c_eps, double R);

// 5/sqrt(inj)
double linf_l2_constant(double inj);

// 1/K (involution)
double fiber_translation(double K);

struct ReportRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    double slack = 0.0;
    std::string anchor; // the relation in formula form
};

struct FiberedInvariants {
    double K = 1.0;        // Lipschitz constant of the class
    double ent = 1.0;      // monodromy entropy
    double vol = 1.0;      // hyperbolic volume
    double thurston = 0.0; // Thurston norm
    int genus = 2;
};

struct EntropyReport {
    std::vector<ReportRow> rows;
    bool consistent = true; // all required inequalities satisfied by the inputs
};

EntropyReport entropy_relations(const FiberedInvariants& inv);

struct CoveringScaling {
    double lip_n = 0.0;      // Lipschitz constant of the degree-n cyclic cover class
    double lip_over_n = 0.0; // Lipschitz constant of the 1/n fractional class
    double product = 0.0;    // (lip/n)*(n*ent), invariant in n
};

CoveringScaling covering_scaling(double lip, int n, double ent = 0.0);

struct VolumeComparison {
    double vol_id = 0.0; // 2*pi*(2*genus-2)/K
    bool holds = false;  // vol_id/2 < vol_hyperbolic
};

VolumeComparison product_volume_comparison(int genus, double K, double vol_hyperbolic);

struct DehnGrowth {
    double lambda_n = 0.0;    // c/n^2
    double lower_bound = 0.0; // 0.2*pi*n/sqrt(c)
    bool valid = false;       // lambda_n <= 58e-6
};

DehnGrowth dehn_example_growth(int n, double c);

nlohmann::json report_json(const std::vector<ReportRow>& rows);

} // namespace tubeharm::bounds
